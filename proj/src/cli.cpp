#include "nk/cli.hpp"

#include "nk/acs.hpp"
#include "nk/curvature.hpp"
#include "nk/hitchin.hpp"
#include "nk/json_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nk::cli {
namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

template <typename T>
T parse_as(const nlohmann::json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const GeometryError& e) {
    throw InputError(path + ": " + e.what());
  }
}

acs::OrthogonalACS read_acs(const std::string& path) {
  const auto raw = parse_as<acs::OrthogonalACS>(read_json(path), path);
  try {
    return acs::validate(raw.matrix());
  } catch (const GeometryError& e) {
    throw InputError(path + ": not a positively oriented orthogonal almost complex structure: " + e.what());
  }
}

bool is_domain_error(ErrorCode code) {
  return code == ErrorCode::NotInAOMinus || code == ErrorCode::PoleAtHalf || code == ErrorCode::OutOfDomain ||
         code == ErrorCode::NonNegativeTau;
}

/// Runs a command body, mapping exceptions to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const GeometryError& e) {
    if (is_domain_error(e.code())) {
      err << "domain error: " << e.what() << "\n";
      return kExitDomainError;
    }
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

}  // namespace

int cmd_classify(const std::string& psi_path, double eps, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto psi = parse_as<exterior::KForm>(read_json(psi_path), psi_path);
    if (psi.degree() != 3) throw InputError(psi_path + ": expected a degree-3 form");
    const Matrix6 k = hitchin::hitchin_K(psi);
    const double tau = (k * k).trace() / 6.0;
    const auto orbit = hitchin::classify_orbit(psi, eps);
    nlohmann::json report{{"tau", tau}, {"orbit", hitchin::to_string(orbit)}};
    if (orbit == hitchin::Orbit::O1) {
      report["kappa"] = std::sqrt(-tau);
      report["J"] = matrix_to_json(Matrix6(k / std::sqrt(-tau)));
    }
    out << report.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_pipeline(const std::string& acs_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const acs::OrthogonalACS i = read_acs(acs_path);
    const double x = i.x();
    if (!i.in_ao_minus())
      throw GeometryError(ErrorCode::NotInAOMinus,
                          "x = a1^2 + a2^2 + a3^2 = " + std::to_string(x) +
                              " is not below 3/4, so tau(d omega_I) = 4x - 3 >= 0 and I has no Hitchin structure");
    const exterior::KForm psi = acs::d_omega(i);
    const Matrix6 k = hitchin::hitchin_K(psi);
    const double tau = (k * k).trace() / 6.0;
    const Matrix6 j = acs::alpha_map(i).J;
    const acs::OrthogonalACS projected = acs::project_polar(acs::GeneralACS{j});
    const Matrix6 p = projected.matrix();
    const double closed_form_residual = max_abs(Matrix6(p.transpose()) - acs::theorem2_closed_form(i));

    const auto frame = acs::u_frame(i);
    const acs::OrthogonalACS projected_u = acs::validate(frame.endomorphism(p));
    const Matrix6 final_j = acs::alpha_map(projected_u).J;
    const Matrix6 j0 = acs::alpha_map(acs::standard_acs()).J;

    const curvature::LeftInvariantMetric g_nk(curvature::nearly_kahler_metric());
    const double defect = curvature::nk_defect(g_nk, final_j);
    const auto forms = curvature::nk_form_system(g_nk, final_j);

    const double det_b = i.B.determinant();
    const double amplification = acs::amplification_determinant(k);
    const bool det_b_negative = det_b < 0;
    const bool amplification_positive = acs::amplification_determinant(j) > 0 && amplification > 0;
    const double tol = 1e-9;
    const bool ok = det_b_negative && amplification_positive && closed_form_residual <= tol &&
                    max_abs(final_j - j0) <= tol && defect <= tol && forms.residual <= tol;

    nlohmann::json report{
        {"x", x},
        {"t", i.t()},
        {"tau", tau},
        {"tau_closed_form", 4 * x - 3},
        {"J_I", matrix_to_json(j)},
        {"pi_J_I", matrix_to_json(p)},
        {"u_frame", matrix_to_json(frame.matrix())},
        {"J_pi_J_I_u_frame", matrix_to_json(final_j)},
        {"detB", {{"value", det_b}, {"negative", det_b_negative}}},
        {"amplification_det",
         {{"K", amplification}, {"expected_8_detB2", 8 * det_b * det_b}, {"positive", amplification_positive}}},
        {"closed_form_residual", closed_form_residual},
        {"final_vs_J_I0", max_abs(final_j - j0)},
        {"nk_defect", defect},
        {"nk_form", {{"mu", forms.mu}, {"residual", forms.residual}, {"omega_wedge_psi", forms.omega_psi}}},
        {"passed", ok}};
    out << report.dump(2) << "\n";
    return ok ? kExitOk : kExitVerificationFailed;
  });
}

int cmd_curvature(const std::optional<std::string>& acs_path, std::optional<double> t, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    if (acs_path.has_value() == t.has_value()) throw InputError("give exactly one of an ACS file or --t");
    acs::OrthogonalACS i;
    if (t) {
      // Validates the pole and the range before building anything.
      curvature::theorem3_closed_form(*t);
      i = acs::planar_family(0, 1, *t);
    } else {
      i = read_acs(*acs_path);
      if (!i.in_ao_minus())
        throw GeometryError(ErrorCode::NotInAOMinus, "x = " + std::to_string(i.x()) + " is not below 3/4");
    }
    const double tt = i.t();
    const auto closed = curvature::theorem3_closed_form(tt);
    const auto pair = acs::lemma3_metric(i);
    const curvature::LeftInvariantMetric g(pair.gI);
    auto report = curvature::ricci(g, curvature::proper_frame(i));

    double discrepancy = std::abs(report.scalar - closed.scalar);
    Matrix6 expected = Matrix6::Zero();
    for (int a = 0; a < 6; ++a) expected(a, a) = closed.diagonal[a];
    discrepancy = std::max(discrepancy, max_abs(report.ricci - expected));

    nlohmann::json j{{"t", tt},
                     {"x", i.x()},
                     {"metric_u_frame", matrix_to_json(pair.gI)},
                     {"oracle", report},
                     {"closed_form", {{"ricci_diagonal", closed.diagonal}, {"scalar", closed.scalar}}},
                     {"scalar_oracle", report.scalar},
                     {"scalar_closed_form", closed.scalar},
                     {"max_discrepancy", discrepancy}};
    out << j.dump(2) << "\n";
    return discrepancy <= 1e-8 * std::max(1.0, max_abs(expected)) ? kExitOk : kExitVerificationFailed;
  });
}

int cmd_verify(const verify::VerificationConfig& config, Format format, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.samples < 1) throw InputError("--samples must be at least 1");
    for (const auto& [name, tol] : config.tolerances)
      if (!(tol >= 0)) throw InputError("tolerance for " + name + " must be non-negative");
    const auto summary = verify::run_verification(config);

    std::ostringstream body;
    if (format == Format::csv) verify::write_csv(body, summary.records);
    else body << verify::summary_json(summary, true).dump(2) << "\n";
    if (out_path) {
      std::ofstream file(*out_path, std::ios::binary);
      if (!file) throw InputError("cannot write " + *out_path);
      file << body.str();
    } else {
      out << body.str();
    }

    for (const auto& c : summary.checks) {
      char line[256];
      std::snprintf(line, sizeof line, "%-18s %s worst=%.3e tol=%.1e n=%zu failures=%zu\n", c.name.c_str(),
                    c.passed() ? "PASS" : "FAIL", c.worst, c.tolerance, c.evaluated, c.failures);
      err << line;
    }
    if (const auto* failed = summary.first_failure()) {
      err << "verification failed: " << failed->name << " (first at sample " << failed->first_failure << ")\n";
      return kExitVerificationFailed;
    }
    return kExitOk;
  });
}

int cmd_sample(std::uint64_t seed, bool require_ao_minus, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << nlohmann::json(acs::sample(seed, require_ao_minus)).dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_dform(const std::string& acs_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto raw = parse_as<acs::OrthogonalACS>(read_json(acs_path), acs_path);
    out << nlohmann::json(acs::d_omega(raw)).dump(2) << "\n";
    return kExitOk;
  });
}

}  // namespace nk::cli
