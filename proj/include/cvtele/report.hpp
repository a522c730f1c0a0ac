#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvtele/bell.hpp"
#include "cvtele/criteria.hpp"
#include "cvtele/csv.hpp"
#include "cvtele/oracle.hpp"
#include "cvtele/teleport.hpp"

namespace cvtele {

/// Uniform grid of `count` points from `min` to `max` inclusive.
/// A single-point grid holds just `min`.
struct UniformGrid {
    double min = 0.0;
    double max = 0.0;
    int count = 1;

    std::vector<double> values() const;
};

/// Union of grids, sorted ascending with exact duplicates removed.
std::vector<double> merge_grids(const std::vector<std::vector<double>>& grids);

/// Which column groups a generic sweep emits.
struct SweepOutputs {
    bool fidelity = true;
    bool criteria = false;
    bool bell = false;
};

struct SweepSpec {
    std::vector<double> r_grid;
    std::vector<double> eta_list;
    double nbar = 0.0;
    std::vector<double> j_grid;  ///< only used by fig2
    double tol = kDefaultBellTol;
    SweepOutputs outputs;
    unsigned workers = 1;
};

/// Throws DomainError when a grid is empty or holds out-of-range values.
void validate(const SweepSpec& spec, bool needs_j_grid = false);

/// Transmissions drawn in every figure.
std::vector<double> default_eta_list();

SweepSpec default_fig1_spec();  ///< 200 pts on [0,3] + 100 pts on (0,0.1]
SweepSpec default_fig2_spec();  ///< r in {0.1, ln2/2, 1, 2}, J on [0,1]
SweepSpec default_fig3_spec();  ///< same r grid as fig1
SweepSpec default_fig4_spec();  ///< 400 pts on [0,5]

struct Fig1Row {
    double r, eta, nbar, fidelity;
    bool operator==(const Fig1Row&) const = default;
};

struct Fig2Row {
    double r, eta, nbar, j, b;
    bool operator==(const Fig2Row&) const = default;
};

struct Fig3Row {
    double r, eta, nbar, j_max, b_max;
    bool violates;
    bool operator==(const Fig3Row&) const = default;
};

/// One (F, B_max) sample for the parametric Bell-versus-fidelity curves.
struct BellScanRow {
    double r, eta, nbar, fidelity, duan_sum, j_max, b_max;
    bool violates;
    bool loss_bound_ok;
    bool operator==(const BellScanRow&) const = default;
};

// Rows come back sorted by (eta descending, r ascending[, J ascending]).
std::vector<Fig1Row> fig1(const SweepSpec& spec);
std::vector<Fig2Row> fig2(const SweepSpec& spec);
std::vector<Fig3Row> fig3(const SweepSpec& spec);
std::vector<BellScanRow> fig4(const SweepSpec& spec);

/// Generic grid sweep emitting the column groups selected in spec.outputs.
Table sweep(const SweepSpec& spec);

BellScanRow bell_scan_row(const EprParams& params, double tol = kDefaultBellTol);

Table to_table(const std::vector<Fig1Row>& rows);
Table to_table(const std::vector<Fig2Row>& rows);
Table to_table(const std::vector<Fig3Row>& rows);
Table to_table(const std::vector<BellScanRow>& rows);

std::vector<Fig1Row> fig1_rows(const Table& table);
std::vector<Fig2Row> fig2_rows(const Table& table);
std::vector<Fig3Row> fig3_rows(const Table& table);
std::vector<BellScanRow> bell_scan_rows(const Table& table);

/// Fixed column order: r, eta, nbar, duan_sum, duan_nonseparable, mu,
/// dx_mu_sq, dp_mu_sq, cond_var_x, cond_var_p, gg_product, gg_hi_satisfied,
/// gg_sum_satisfied, simon_mu_nonseparable, nbar_threshold.
Table criteria_table(const std::vector<CriteriaReport>& reports);

/// criteria_table columns followed by the mu = 1 evaluation (unit_mu_*) and
/// gg_info_exchange_satisfied, for the flat JSON form.
Table criteria_table_extended(const std::vector<CriteriaReport>& reports);

Table fidelity_table(const EprParams& params, const FidelityResult& result);
Table bell_result_table(const EprParams& params, const BellResult& result);
Table chsh_table(const ScaledChsh& chsh);
Table oracle_table(const EprParams& params, const OracleEstimate& estimate, double analytic);

/// Loads a sweep document (JSON). Recognized keys, all optional:
///   "r":        list of reals, or {"min","max","count"} grid
///   "r_refine": additional grid merged into "r"
///   "eta":      list of reals
///   "nbar":     real
///   "j":        list or grid (fig2)
///   "tol":      real
///   "outputs":  list drawn from "fidelity", "criteria", "bell"
///   "workers":  integer >= 1
/// Missing keys keep the values already in `base`.
SweepSpec load_sweep_config(std::string_view json_text, SweepSpec base);

}  // namespace cvtele
