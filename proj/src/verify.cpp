#include "nk/verify.hpp"

#include "nk/acs.hpp"
#include "nk/curvature.hpp"
#include "nk/hitchin.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

namespace nk::verify {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Checks that report a 0/1 failure flag instead of a residual.
bool is_sign_check(const std::string& name) {
  return name == "det_b" || name == "amplification" || name == "orbit_equivalence";
}

Matrix6 k_block_formula(const acs::OrthogonalACS& i) {
  const Matrix3 e = Matrix3::Identity();
  const Matrix3 bs = acs::cofactor(i.B);
  Matrix6 k;
  k << e - 2 * acs::cofactor(i.A), -2 * bs, 2 * bs.transpose(), -e + 2 * acs::cofactor(i.C);
  return k;
}

std::array<double, 6> sorted_spectrum(const Matrix6& g) {
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(g, Eigen::EigenvaluesOnly);
  std::array<double, 6> w{};
  for (int k = 0; k < 6; ++k) w[k] = eig.eigenvalues()(k);
  return w;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "tau",        "k_blocks", "relations",        "orbit_equivalence", "det_b",      "amplification", "astar",
      "projection", "rotation", "hermitian_metric", "ricci",             "round_trip", "nk_form"};
  return names;
}

std::map<std::string, double> default_tolerances() {
  return {{"tau", 1e-9},         {"k_blocks", 1e-10},
          {"relations", 1e-10},  {"orbit_equivalence", 0.0},
          {"det_b", 0.0},        {"amplification", 0.0},
          {"astar", 1e-12},      {"projection", 1e-9},
          {"rotation", 1e-10},   {"hermitian_metric", 1e-9},
          {"ricci", 1e-8},       {"round_trip", 1e-9},
          {"nk_form", 1e-9}};
}

SampleRecord evaluate_sample(std::uint64_t seed, std::size_t index) {
  SampleRecord r;
  r.index = index;
  const acs::OrthogonalACS i = acs::sample(acs::substream_seed(seed, index), false);
  r.x = i.x();
  r.t = i.t();
  r.detB = i.B.determinant();

  // tau by wedge / interior products only.
  const exterior::KForm psi = acs::d_omega(i);
  const Matrix6 k = hitchin::hitchin_K(psi);
  r.tau = (k * k).trace() / 6.0;
  r.residual_thm1 = std::abs(r.tau - (4 * r.x - 3));
  r.residuals["tau"] = r.residual_thm1;
  r.residuals["k_blocks"] = max_abs(k - k_block_formula(i));

  const double sum_c = i.c().squaredNorm();
  const double sum_b = i.B.squaredNorm();
  r.residuals["relations"] = std::max({acs::scalar_relations_residual(i), std::abs(r.x - sum_c),
                                       std::abs(sum_b - (3 - 2 * r.x))});
  const bool c1 = r.tau < 0, c2 = sum_c < 0.75, c3 = r.x < 0.75, c4 = sum_b > 1.5;
  r.residuals["orbit_equivalence"] = (c1 == c2 && c2 == c3 && c3 == c4) ? 0.0 : 1.0;

  r.in_ao_minus = i.in_ao_minus();
  if (!r.in_ao_minus) {
    r.residual_thm2 = r.residual_thm3_max = r.nk_defect = kNaN;
    return r;
  }

  const double kappa = std::sqrt(-r.tau);
  const Matrix6 j = k / kappa;
  r.residuals["det_b"] = r.detB < 0 ? 0.0 : 1.0;
  const double amplification = acs::amplification_determinant(k);
  const double expected = 8 * r.detB * r.detB;
  const bool amplification_ok = acs::amplification_determinant(j) > 0 && amplification > 0 &&
                         std::abs(amplification - expected) <= 1e-9 * std::max(1.0, expected);
  r.residuals["amplification"] = amplification_ok ? 0.0 : 1.0;

  const Matrix3 as = acs::cofactor(i.A);
  r.residuals["astar"] = max_abs(as * as - r.x * as);

  // Polar route versus the closed form.
  const Matrix6 p = acs::polar_part(j);
  const Matrix6 omega_j = p.transpose();
  r.residual_thm2 = std::max({max_abs(omega_j - acs::theorem2_closed_form(i)),
                              max_abs(p * p.transpose() - Matrix6::Identity()),
                              max_abs(p * p + Matrix6::Identity())});
  r.residuals["projection"] = r.residual_thm2;

  const Matrix3 x = acs::u_rotation(i);
  r.residuals["rotation"] = std::max(max_abs(x.transpose() * x - Matrix3::Identity()),
                                    std::abs(x.determinant() - 1));

  const acs::HermitianPair pair = acs::lemma3_metric(i);
  Matrix6 canonical = Matrix6::Zero();
  canonical.topRightCorner<3, 3>() = Matrix3::Identity();
  canonical.bottomLeftCorner<3, 3>() = -Matrix3::Identity();
  // Block formula against omega_J(., K .) built from the polar route.
  const Matrix6 g_def = pair.frame.bilinear(acs::hermitian_metric(omega_j, k));
  const double t = r.t;
  const std::array<double, 6> target{2 * t - 1, 2 * t - 1, 1, 2 * t + 1, 2 * t + 1, 4 * t * t - 1};
  std::array<double, 6> want = target;
  std::sort(want.begin(), want.end());
  const auto got = sorted_spectrum(pair.gI);
  double spectrum = 0;
  for (int n = 0; n < 6; ++n) spectrum = std::max(spectrum, std::abs(got[n] - want[n]));
  r.residuals["hermitian_metric"] = std::max({max_abs(pair.omegaJ - canonical), max_abs(pair.gI - g_def), spectrum});

  const curvature::LeftInvariantMetric g_i(pair.gI);
  const auto frame = curvature::proper_frame(i);
  const auto report = curvature::ricci(g_i, frame);
  const auto closed = curvature::theorem3_closed_form(t);
  double thm3 = std::abs(report.scalar - closed.scalar) / std::max(1.0, std::abs(closed.scalar));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const double want_ab = a == b ? closed.diagonal[a] : 0.0;
      thm3 = std::max(thm3, std::abs(report.ricci(a, b) - want_ab) / std::max(1.0, std::abs(want_ab)));
    }
  r.residual_thm3_max = thm3;
  // Rounding grows like (2t - 1)^-2 near the pole; the check covers t > kRicciMinT.
  if (t > kRicciMinT) r.residuals["ricci"] = thm3;

  // alpha(pi(alpha(I))) in the (u) frame.
  const acs::OrthogonalACS projected_u =
      acs::validate(pair.frame.endomorphism(p), acs::OrientationPolicy::positive, 1e-9);
  const Matrix6 j2 = acs::alpha_map(projected_u).J;
  const Matrix6 j0 = acs::alpha_map(acs::standard_acs()).J;
  const curvature::LeftInvariantMetric g_nk(curvature::nearly_kahler_metric());
  r.nk_defect = curvature::nk_defect(g_nk, j2, 64);
  r.residuals["round_trip"] = std::max(max_abs(j2 - j0), r.nk_defect);
  r.residuals["nk_form"] = curvature::nk_form_system(g_nk, j2).residual;
  return r;
}

bool VerificationSummary::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const CheckResult* VerificationSummary::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed()) return &c;
  return nullptr;
}

VerificationSummary run_verification(const VerificationConfig& config) {
  VerificationSummary summary;
  summary.seed = config.seed;
  summary.records.resize(config.samples);

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, config.samples));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t n = w; n < config.samples; n += threads)
          summary.records[n] = evaluate_sample(config.seed, n);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  const auto defaults = default_tolerances();
  for (const auto& name : check_names()) {
    CheckResult c;
    c.name = name;
    const auto it = config.tolerances.find(name);
    c.tolerance = it != config.tolerances.end() ? it->second : defaults.at(name);
    for (const auto& rec : summary.records) {
      const auto found = rec.residuals.find(name);
      if (found == rec.residuals.end()) continue;
      ++c.evaluated;
      const double v = found->second;
      c.worst = std::max(c.worst, v);
      const bool bad = is_sign_check(name) ? v != 0.0 : !(v <= c.tolerance);
      if (bad) {
        if (c.first_failure < 0) c.first_failure = long(rec.index);
        ++c.failures;
      }
    }
    summary.checks.push_back(c);
  }
  return summary;
}

void write_csv(std::ostream& out, const std::vector<SampleRecord>& records) {
  out << "sample_index,x,t,tau,residual_thm1,detB,residual_thm2,residual_thm3_max,nk_defect\n";
  char line[512];
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.index, r.x,
                  r.t, r.tau, r.residual_thm1, r.detB, r.residual_thm2, r.residual_thm3_max, r.nk_defect);
    out << line;
  }
}

nlohmann::json summary_json(const VerificationSummary& summary, bool include_records) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : summary.checks)
    checks.push_back({{"name", c.name},
                      {"worst", c.worst},
                      {"tolerance", c.tolerance},
                      {"evaluated", c.evaluated},
                      {"failures", c.failures},
                      {"first_failure", c.first_failure < 0 ? nlohmann::json(nullptr) : nlohmann::json(c.first_failure)},
                      {"passed", c.passed()}});
  nlohmann::json j{{"seed", summary.seed},
                   {"samples", summary.records.size()},
                   {"passed", summary.passed()},
                   {"checks", checks}};
  if (include_records) {
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : summary.records)
      rows.push_back({{"sample_index", r.index},
                      {"x", r.x},
                      {"t", r.t},
                      {"tau", r.tau},
                      {"residual_thm1", r.residual_thm1},
                      {"detB", r.detB},
                      {"residual_thm2", num(r.residual_thm2)},
                      {"residual_thm3_max", num(r.residual_thm3_max)},
                      {"nk_defect", num(r.nk_defect)}});
    j["records"] = rows;
  }
  return j;
}

}  // namespace nk::verify
