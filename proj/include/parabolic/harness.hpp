#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "parabolic/lattice.hpp"
#include "parabolic/norms.hpp"

namespace parabolic {

enum class FamilyKind {
  gaussian_dilation,  // f(eps X, eps^2 t) of exp(-a|X|^2 - b t^2)
  random_shell,       // random coefficients tapered to one dyadic block
  pure_mode_scan,     // lattice modes at rho ~ 2^j
  corpus,             // fixed mix of shifted / modulated Gaussians and band-limited fields
};

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& s);

std::vector<double> default_epsilons();  // 2^-3 .. 2^3

struct FamilySpec {
  FamilyKind kind = FamilyKind::gaussian_dilation;
  Domain domain = Domain::space_time;
  double a = 4.0;  // spatial width parameter
  double b = 4.0;  // temporal width parameter
  double a_max = 16.0;  // corpus widths are drawn from [a, a_max] x [b, b_max]
  double b_max = 16.0;
  double shift = 0.5;   // corpus centre offsets in [-shift, shift]
  int modulation = 4;   // corpus modulation, lattice offsets in [0, modulation]
  int band = 4;         // corpus band-limited members: lattice offsets <= band
  std::vector<double> epsilons = default_epsilons();
  int shell_lo = 2;
  int shell_hi = 4;
  int count = 20;  // corpus size
  std::uint64_t seed = 1;
};

/// One generated field. For dilation families `grid` is the dilated lattice
/// (Lx / eps, Lt / eps^2, T / eps^2) carrying the member; otherwise the input grid.
struct FamilyMember {
  std::string label;
  double parameter = 0.0;
  GridSpec grid;
  Field field;
};

/// Lattice on which f(eps X, eps^2 t) has the same samples as f on `base`.
GridSpec dilated_grid(const GridSpec& base, double eps);

/// Deterministic in the seed. Throws std::invalid_argument when a member
/// breaks the budgets: truncation energy >= 1e-8, or (localized kinds)
/// boundary samples above 1e-12 of the peak.
std::vector<FamilyMember> generate_family(const FamilySpec& spec, const GridSpec& grid);

/// Largest boundary sample modulus over the largest modulus.
double edge_decay(const Field& field);

enum class TheoremId {
  p2_1,      // besov_diff vs besov_lp
  t3_1,
  c3_2,
  t3_3,
  c3_4,
  t4_3,
  t5_1,
  t5_3,
  t5_4,
  t5_5,
  t1_1,
  lemma5_2,  // multiplier decay table, see run_multiplier_decay
  self,      // a norm against itself
};

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);
bool is_two_sided(TheoremId id);

struct ExperimentParams {
  double alpha = 1.0;
  double p = 2.0;
  std::optional<double> q;  // defaults to p
  int i = 1;
  double T = 1.0;
  NormKind self_kind = NormKind::sobolev;  // only for TheoremId::self
  double control_shift = 1.0;  // smoothness removed from the control's right side

  double q_or_p() const { return q ? *q : p; }
};

struct ReportRow {
  std::string label;
  double parameter = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct EquivalenceReport {
  std::string theorem;
  std::string family;
  GridSpec grid;
  ExperimentParams params;
  bool two_sided = true;
  std::string lhs;
  std::string rhs;
  std::string control;
  std::vector<ReportRow> rows;
  std::vector<ReportRow> control_rows;
  double spread = 0.0;
  double control_spread = 0.0;
  double max_ratio = 0.0;
  double control_max_ratio = 0.0;
  double threshold = 16.0;
  double separation = 4.0;
  bool passed = false;
};

double spread_of(const std::vector<ReportRow>& rows);
double max_ratio_of(const std::vector<ReportRow>& rows);

/// Two-sided ids: rows over `family` on `grid`, control_rows with the right
/// side's smoothness lowered by params.control_shift. Pass iff spread <= threshold and, for
/// dilation families, control_spread >= separation * spread.
/// One-sided ids (t5.x): rows on `grid`, control_rows on the half-resolution
/// grid; pass iff both maxima are finite and within a factor 2.
/// `self` compares a norm with itself. The cutoff T is params.T, replacing grid.T.
/// Throws std::invalid_argument for parameters outside the statement.
EquivalenceReport run_equivalence(TheoremId id, const FamilySpec& family, const GridSpec& grid,
                                  const ExperimentParams& params);

struct DecayRow {
  int i = 0;
  double t = 0.0;
  double s = 0.0;  // t 2^(2i)
  double lower = 0.0;
  double upper = 0.0;
  double bound = 0.0;  // C exp(-s/8)
  bool ok = false;
};

struct DecayReport {
  GridSpec grid;
  double p = 2.0;
  std::vector<double> constants;  // C per shell, from the smallest s
  std::vector<DecayRow> rows;
  std::vector<double> slopes;     // least-squares d log(upper) / ds per shell
  std::vector<double> t0_upper;   // upper bound at t -> 0 per shell
  std::vector<double> core_l1;    // L1 norm of the undamped Phi'_i kernel per shell
  bool passed = false;
};

/// rho_{t,i} brackets for every (i, s) with s = t 2^(2i). Pass iff every
/// upper bound stays under C exp(-s/8), every slope is <= -1/8 and the t -> 0
/// upper bound is within a factor 2 of core_l1.
DecayReport run_multiplier_decay(const GridSpec& spatial_grid, const std::vector<int>& shells,
                                 const std::vector<double>& s_values, double p);

std::string report_csv(const EquivalenceReport& report);
std::string report_json(const EquivalenceReport& report);
EquivalenceReport report_from_json(const std::string& text);
std::string decay_csv(const DecayReport& report);
std::string decay_json(const DecayReport& report);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json. Throws std::invalid_argument
/// for an empty report and std::runtime_error (with the path) on I/O failure.
void emit_report(const EquivalenceReport& report, const std::filesystem::path& dir,
                 const std::string& stem);
void emit_decay(const DecayReport& report, const std::filesystem::path& dir,
                const std::string& stem);

/// Grids used by the default suite.
GridSpec suite_space_time_grid();  // n=1, 256 x 1024, Lx = Lt = 8, T = 1
GridSpec suite_spatial_grid();     // n=1, 2048 x 512, Lx = 16, Lt = 4, T = 1
GridSpec suite_refinement_grid();  // n=1, 128 x 128, Lx = Lt = 4, T = 1
GridSpec suite_decay_grid();       // n=1, 2048 x 8, Lx = 8
GridSpec suite_corpus_grid();      // n=1, 256 x 512, Lx = Lt = 8, T = 1

/// Family and grid the default suite uses for a theorem.
FamilySpec suite_family(TheoremId id, std::uint64_t seed);
GridSpec suite_grid(TheoremId id);

struct SuiteCase {
  TheoremId id;
  ExperimentParams params;
};

/// Every experiment of the default suite, in run order.
std::vector<SuiteCase> default_suite(std::uint64_t seed = 1);

struct SuiteOutcome {
  std::vector<EquivalenceReport> reports;
  std::optional<DecayReport> decay;
  bool passed = false;
};

/// Runs the cases (lemma5.2 entries run the decay table) and, if out_dir is
/// non-empty, writes one CSV/JSON pair per case plus summary.json.
SuiteOutcome run_suite(const std::vector<SuiteCase>& cases, const std::filesystem::path& out_dir,
                       std::uint64_t seed = 1);

/// File stem used for a case, e.g. "t3.1_a1_p2".
std::string case_stem(const SuiteCase& c);

}  // namespace parabolic
