#include "cvtele/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "cvtele/parallel.hpp"
#include "json.hpp"

namespace cvtele {

namespace {

using Row = std::vector<Cell>;

struct GridPoint {
    double r;
    double eta;
};

std::vector<GridPoint> ordered_points(const SweepSpec& spec) {
    std::vector<double> etas = spec.eta_list;
    std::vector<double> rs = spec.r_grid;
    std::sort(etas.begin(), etas.end(), std::greater<>());
    std::sort(rs.begin(), rs.end());
    std::vector<GridPoint> points;
    points.reserve(etas.size() * rs.size());
    for (double eta : etas)
        for (double r : rs)
            points.push_back({r, eta});
    return points;
}

// Evaluates fn at every grid point on spec.workers threads; output order
// matches ordered_points regardless of the worker count.
template <typename Out, typename Fn>
std::vector<Out> map_points(const SweepSpec& spec, Fn fn) {
    const std::vector<GridPoint> points = ordered_points(spec);
    std::vector<Out> out(points.size());
    parallel_for(points.size(), spec.workers,
                 [&](std::size_t i) { out[i] = fn(EprParams{points[i].r, points[i].eta, spec.nbar}); });
    return out;
}

double real_at(const Row& row, std::size_t i) {
    if (const double* v = std::get_if<double>(&row[i]))
        return *v;
    throw FormatError("expected a number in column " + std::to_string(i));
}

bool flag_at(const Row& row, std::size_t i) {
    if (const bool* v = std::get_if<bool>(&row[i]))
        return *v;
    throw FormatError("expected true/false in column " + std::to_string(i));
}

void expect_columns(const Table& table, const std::vector<std::string>& columns) {
    if (table.columns != columns)
        throw FormatError("unexpected column layout");
}

double threshold_cell(const NbarThreshold& t) {
    return t.is_unbounded() ? std::numeric_limits<double>::infinity() : t.value();
}

const std::vector<std::string> kFig1Columns{"r", "eta", "nbar", "fidelity"};
const std::vector<std::string> kFig2Columns{"r", "eta", "nbar", "j", "b"};
const std::vector<std::string> kFig3Columns{"r", "eta", "nbar", "j_max", "b_max", "violates"};
const std::vector<std::string> kBellScanColumns{
    "r", "eta", "nbar", "fidelity", "duan_sum", "j_max", "b_max", "violates", "loss_bound_ok"};
const std::vector<std::string> kCriteriaColumns{
    "r", "eta", "nbar", "duan_sum", "duan_nonseparable", "mu", "dx_mu_sq", "dp_mu_sq",
    "cond_var_x", "cond_var_p", "gg_product", "gg_hi_satisfied", "gg_sum_satisfied",
    "simon_mu_nonseparable", "nbar_threshold"};

Row criteria_cells(const CriteriaReport& c) {
    return Row{c.params.r, c.params.eta, c.params.nbar, c.duan_sum, c.duan_nonseparable,
               c.mu, c.dx_mu_sq, c.dp_mu_sq, c.cond_var_x, c.cond_var_p, c.gg_product,
               c.gg_hi_satisfied, c.gg_sum_satisfied, c.simon_mu_nonseparable,
               threshold_cell(c.nbar_threshold)};
}

std::vector<double> grid_from_json(const nlohmann::json& node, const char* key) {
    if (node.is_array()) {
        std::vector<double> values;
        for (const auto& v : node) {
            if (!v.is_number())
                throw DomainError(key, "list entries must be numbers");
            values.push_back(v.get<double>());
        }
        return values;
    }
    if (node.is_object()) {
        UniformGrid g;
        g.min = node.at("min").get<double>();
        g.max = node.at("max").get<double>();
        g.count = node.at("count").get<int>();
        return g.values();
    }
    throw DomainError(key, "expected a list or a {min, max, count} grid");
}

}  // namespace

std::vector<double> UniformGrid::values() const {
    if (count < 1)
        throw DomainError("count", "grid needs at least one point");
    if (!std::isfinite(min) || !std::isfinite(max) || max < min)
        throw DomainError("grid", "bounds must be finite with min <= max");
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = min;
        return out;
    }
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = min + i * step;
    out.back() = max;
    return out;
}

std::vector<double> merge_grids(const std::vector<std::vector<double>>& grids) {
    std::vector<double> all;
    for (const auto& g : grids)
        all.insert(all.end(), g.begin(), g.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

void validate(const SweepSpec& spec, bool needs_j_grid) {
    if (spec.r_grid.empty())
        throw DomainError("r", "grid is empty");
    if (spec.eta_list.empty())
        throw DomainError("eta", "list is empty");
    for (double r : spec.r_grid)
        for (double eta : spec.eta_list)
            cvtele::validate(EprParams{r, eta, spec.nbar});
    if (needs_j_grid) {
        if (spec.j_grid.empty())
            throw DomainError("j", "grid is empty");
        for (double j : spec.j_grid)
            if (!std::isfinite(j) || j < 0.0)
                throw DomainError("j", "values must be finite and >= 0");
    }
    if (!(spec.tol > 0.0))
        throw DomainError("tol", "must be > 0");
    if (spec.workers < 1)
        throw DomainError("workers", "must be >= 1");
}

std::vector<double> default_eta_list() { return {0.99, 0.90, 0.70, 0.50}; }

SweepSpec default_fig1_spec() {
    SweepSpec spec;
    spec.r_grid = merge_grids({UniformGrid{0.0, 3.0, 200}.values(),
                               UniformGrid{0.001, 0.1, 100}.values()});
    spec.eta_list = default_eta_list();
    return spec;
}

SweepSpec default_fig2_spec() {
    SweepSpec spec;
    spec.r_grid = {0.1, std::numbers::ln2 / 2.0, 1.0, 2.0};
    spec.eta_list = default_eta_list();
    spec.j_grid = UniformGrid{0.0, 1.0, 401}.values();
    return spec;
}

SweepSpec default_fig3_spec() {
    SweepSpec spec = default_fig1_spec();
    spec.outputs = SweepOutputs{false, false, true};
    return spec;
}

SweepSpec default_fig4_spec() {
    SweepSpec spec;
    spec.r_grid = UniformGrid{0.0, 5.0, 400}.values();
    spec.eta_list = default_eta_list();
    spec.outputs = SweepOutputs{true, false, true};
    return spec;
}

std::vector<Fig1Row> fig1(const SweepSpec& spec) {
    validate(spec);
    return map_points<Fig1Row>(spec, [](const EprParams& p) {
        return Fig1Row{p.r, p.eta, p.nbar, fidelity(make_state(p)).fidelity};
    });
}

std::vector<Fig2Row> fig2(const SweepSpec& spec) {
    validate(spec, true);
    std::vector<double> js = spec.j_grid;
    std::sort(js.begin(), js.end());
    const auto curves = map_points<std::vector<Fig2Row>>(spec, [&js](const EprParams& p) {
        const GaussianEprState state = make_state(p);
        std::vector<Fig2Row> curve;
        curve.reserve(js.size());
        for (double j : js)
            curve.push_back(Fig2Row{p.r, p.eta, p.nbar, j, b_of_j(state, j)});
        return curve;
    });
    std::vector<Fig2Row> rows;
    for (const auto& c : curves)
        rows.insert(rows.end(), c.begin(), c.end());
    return rows;
}

std::vector<Fig3Row> fig3(const SweepSpec& spec) {
    validate(spec);
    return map_points<Fig3Row>(spec, [tol = spec.tol](const EprParams& p) {
        const BellResult b = maximize_b(make_state(p), tol);
        return Fig3Row{p.r, p.eta, p.nbar, b.j_max, b.b_max, b.violates};
    });
}

BellScanRow bell_scan_row(const EprParams& params, double tol) {
    const GaussianEprState state = make_state(params);
    const FidelityResult f = fidelity(state);
    const BellResult b = maximize_b(state, tol);
    return BellScanRow{params.r, params.eta, params.nbar, f.fidelity, duan_sum(state),
                       b.j_max, b.b_max, b.violates, loss_bound_ok(params)};
}

std::vector<BellScanRow> fig4(const SweepSpec& spec) {
    validate(spec);
    return map_points<BellScanRow>(spec, [tol = spec.tol](const EprParams& p) {
        return bell_scan_row(p, tol);
    });
}

Table sweep(const SweepSpec& spec) {
    validate(spec);
    Table table;
    table.columns = {"r", "eta", "nbar", "duan_sum"};
    if (spec.outputs.fidelity)
        table.columns.insert(table.columns.end(), {"fidelity", "beats_classical", "beats_two_thirds"});
    if (spec.outputs.criteria)
        table.columns.insert(table.columns.end(), kCriteriaColumns.begin() + 4, kCriteriaColumns.end());
    if (spec.outputs.bell)
        table.columns.insert(table.columns.end(), {"j_max", "b_max", "violates", "loss_bound_ok"});

    const SweepOutputs outputs = spec.outputs;
    const double tol = spec.tol;
    table.rows = map_points<Row>(spec, [outputs, tol](const EprParams& p) {
        const GaussianEprState state = make_state(p);
        Row row{p.r, p.eta, p.nbar, duan_sum(state)};
        if (outputs.fidelity) {
            const FidelityResult f = fidelity(state);
            row.insert(row.end(), {f.fidelity, f.beats_classical, f.beats_two_thirds});
        }
        if (outputs.criteria) {
            const Row c = criteria_cells(classify(p));
            row.insert(row.end(), c.begin() + 4, c.end());
        }
        if (outputs.bell) {
            const BellResult b = maximize_b(state, tol);
            row.insert(row.end(), {b.j_max, b.b_max, b.violates, loss_bound_ok(p)});
        }
        return row;
    });
    return table;
}

Table to_table(const std::vector<Fig1Row>& rows) {
    Table t{kFig1Columns, {}};
    for (const auto& r : rows)
        t.rows.push_back(Row{r.r, r.eta, r.nbar, r.fidelity});
    return t;
}

Table to_table(const std::vector<Fig2Row>& rows) {
    Table t{kFig2Columns, {}};
    for (const auto& r : rows)
        t.rows.push_back(Row{r.r, r.eta, r.nbar, r.j, r.b});
    return t;
}

Table to_table(const std::vector<Fig3Row>& rows) {
    Table t{kFig3Columns, {}};
    for (const auto& r : rows)
        t.rows.push_back(Row{r.r, r.eta, r.nbar, r.j_max, r.b_max, r.violates});
    return t;
}

Table to_table(const std::vector<BellScanRow>& rows) {
    Table t{kBellScanColumns, {}};
    for (const auto& r : rows)
        t.rows.push_back(Row{r.r, r.eta, r.nbar, r.fidelity, r.duan_sum, r.j_max, r.b_max,
                             r.violates, r.loss_bound_ok});
    return t;
}

std::vector<Fig1Row> fig1_rows(const Table& table) {
    expect_columns(table, kFig1Columns);
    std::vector<Fig1Row> out;
    for (const auto& row : table.rows)
        out.push_back({real_at(row, 0), real_at(row, 1), real_at(row, 2), real_at(row, 3)});
    return out;
}

std::vector<Fig2Row> fig2_rows(const Table& table) {
    expect_columns(table, kFig2Columns);
    std::vector<Fig2Row> out;
    for (const auto& row : table.rows)
        out.push_back({real_at(row, 0), real_at(row, 1), real_at(row, 2), real_at(row, 3),
                       real_at(row, 4)});
    return out;
}

std::vector<Fig3Row> fig3_rows(const Table& table) {
    expect_columns(table, kFig3Columns);
    std::vector<Fig3Row> out;
    for (const auto& row : table.rows)
        out.push_back({real_at(row, 0), real_at(row, 1), real_at(row, 2), real_at(row, 3),
                       real_at(row, 4), flag_at(row, 5)});
    return out;
}

std::vector<BellScanRow> bell_scan_rows(const Table& table) {
    expect_columns(table, kBellScanColumns);
    std::vector<BellScanRow> out;
    for (const auto& row : table.rows)
        out.push_back({real_at(row, 0), real_at(row, 1), real_at(row, 2), real_at(row, 3),
                       real_at(row, 4), real_at(row, 5), real_at(row, 6), flag_at(row, 7),
                       flag_at(row, 8)});
    return out;
}

Table criteria_table(const std::vector<CriteriaReport>& reports) {
    Table t{kCriteriaColumns, {}};
    for (const auto& c : reports)
        t.rows.push_back(criteria_cells(c));
    return t;
}

Table criteria_table_extended(const std::vector<CriteriaReport>& reports) {
    Table t = criteria_table(reports);
    t.columns.insert(t.columns.end(),
                     {"unit_mu_dx_mu_sq", "unit_mu_dp_mu_sq", "unit_mu_gg_product",
                      "unit_mu_gg_hi_satisfied", "unit_mu_gg_sum_satisfied",
                      "unit_mu_simon_mu_nonseparable", "gg_info_exchange_satisfied"});
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const MuCriteria& u = reports[i].at_unit_mu;
        t.rows[i].insert(t.rows[i].end(),
                         {u.dx_mu_sq, u.dp_mu_sq, u.gg_product, u.gg_hi_satisfied,
                          u.gg_sum_satisfied, u.simon_mu_nonseparable,
                          reports[i].gg_info_exchange_satisfied});
    }
    return t;
}

Table fidelity_table(const EprParams& p, const FidelityResult& f) {
    return Table{{"r", "eta", "nbar", "fidelity", "beats_classical", "beats_two_thirds"},
                 {Row{p.r, p.eta, p.nbar, f.fidelity, f.beats_classical, f.beats_two_thirds}}};
}

Table bell_result_table(const EprParams& p, const BellResult& b) {
    return Table{{"r", "eta", "nbar", "j_max", "b_max", "violates"},
                 {Row{p.r, p.eta, p.nbar, b.j_max, b.b_max, b.violates}}};
}

Table chsh_table(const ScaledChsh& c) {
    return Table{{"visibility", "theta", "phi1", "phi1_alt", "phi2", "phi2_alt", "s_value",
                  "m_scale", "violates"},
                 {Row{c.visibility, c.theta, c.angles.phi1, c.angles.phi1_alt, c.angles.phi2,
                      c.angles.phi2_alt, c.s_value, c.m_scale,
                      std::abs(c.s_value) > kChshLocalBound}}};
}

Table oracle_table(const EprParams& p, const OracleEstimate& e, double analytic) {
    return Table{{"r", "eta", "nbar", "samples", "fidelity_hat", "std_error", "duan_sum_hat",
                  "fidelity_analytic", "z_score", "pass"},
                 {Row{p.r, p.eta, p.nbar, static_cast<double>(e.samples), e.fidelity_hat,
                      e.std_error, e.duan_sum_hat, analytic,
                      (e.fidelity_hat - analytic) / e.std_error, e.agrees_with(analytic)}}};
}

SweepSpec load_sweep_config(std::string_view json_text, SweepSpec base) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("config", e.what());
    }
    if (!doc.is_object())
        throw DomainError("config", "top level must be an object");

    try {
        if (doc.contains("r"))
            base.r_grid = grid_from_json(doc["r"], "r");
        if (doc.contains("r_refine"))
            base.r_grid = merge_grids({base.r_grid, grid_from_json(doc["r_refine"], "r_refine")});
        if (doc.contains("eta"))
            base.eta_list = grid_from_json(doc["eta"], "eta");
        if (doc.contains("nbar"))
            base.nbar = doc["nbar"].get<double>();
        if (doc.contains("j"))
            base.j_grid = grid_from_json(doc["j"], "j");
        if (doc.contains("tol"))
            base.tol = doc["tol"].get<double>();
        if (doc.contains("workers")) {
            const int w = doc["workers"].get<int>();
            if (w < 1)
                throw DomainError("workers", "must be >= 1");
            base.workers = static_cast<unsigned>(w);
        }
        if (doc.contains("outputs")) {
            SweepOutputs o{false, false, false};
            for (const auto& name : doc["outputs"]) {
                const std::string s = name.get<std::string>();
                if (s == "fidelity")
                    o.fidelity = true;
                else if (s == "criteria")
                    o.criteria = true;
                else if (s == "bell")
                    o.bell = true;
                else
                    throw DomainError("outputs", "unknown output '" + s + "'");
            }
            base.outputs = o;
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("config", e.what());
    }
    return base;
}

}  // namespace cvtele
