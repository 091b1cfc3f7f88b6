#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sclab/ensemble.hpp"
#include "sclab/expansion.hpp"
#include "sclab/experiments.hpp"
#include "sclab/manifest.hpp"
#include "sclab/semicircle.hpp"
#include "sclab/spectral.hpp"

namespace py = pybind11;
using namespace sclab;

namespace {

ensemble::HermitianMatrix make_hermitian(const Eigen::MatrixXcd& entries) {
  if (entries.rows() != entries.cols()) {
    throw ValidationError("entries must be square");
  }
  ensemble::HermitianMatrix H;
  H.entries = entries;
  H.spec = ensemble::WignerSpec{entries.rows(), ensemble::EntryDistribution::Gaussian, 0};
  for (long i = 0; i < entries.rows(); ++i) {
    H.labels.push_back(static_cast<int>(i + 1));
  }
  return H;
}

expansion::InitialKind initial_kind_from(const std::string& type) {
  if (type == "A") return expansion::InitialKind::AType;
  if (type == "B") return expansion::InitialKind::BType;
  throw ValidationError("expansion type must be 'A' or 'B'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wigner matrix / semicircle law numerics laboratory";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  // --- semicircle ---------------------------------------------------------
  py::class_<semicircle::SpectralPoint>(m, "SpectralPoint")
      .def(py::init<double, double>(), py::arg("E"), py::arg("eta"))
      .def_property_readonly("E", &semicircle::SpectralPoint::E)
      .def_property_readonly("eta", &semicircle::SpectralPoint::eta)
      .def_property_readonly("kappa", &semicircle::SpectralPoint::kappa)
      .def("__repr__", [](const semicircle::SpectralPoint& z) {
        return "SpectralPoint(E=" + std::to_string(z.E()) + ", eta=" + std::to_string(z.eta()) +
               ")";
      });

  py::class_<semicircle::SemicircleReport>(m, "SemicircleReport")
      .def_readonly("msc", &semicircle::SemicircleReport::msc)
      .def_readonly("bound_lower_ok", &semicircle::SemicircleReport::bound_lower_ok)
      .def_readonly("bound_upper_ok", &semicircle::SemicircleReport::bound_upper_ok)
      .def_readonly("ratio_im_ok", &semicircle::SemicircleReport::ratio_im_ok)
      .def_readonly("ratio_eta_ok", &semicircle::SemicircleReport::ratio_eta_ok);

  m.def("sqrt_upper", &semicircle::sqrt_upper, py::arg("w"),
        "Square root with nonnegative imaginary part.");
  m.def("msc", &semicircle::msc, py::arg("z"), "Stieltjes transform of the semicircle law.");
  m.def("rho_sc", &semicircle::rho_sc, py::arg("x"), "Semicircle density.");
  m.def("n_sc_cdf", &semicircle::n_sc_cdf, py::arg("E"), "Semicircle cumulative distribution.");
  m.def("classical_location", &semicircle::classical_location, py::arg("N"), py::arg("alpha"));
  m.def("classical_locations", &semicircle::classical_locations, py::arg("N"));
  m.def("check_msc_bounds", &semicircle::check_msc_bounds, py::arg("z"));

  // --- ensemble ------------------------------------------------------------
  py::class_<ensemble::WignerSpec>(m, "WignerSpec")
      .def(py::init([](long N, const std::string& distribution, std::uint64_t seed) {
             return ensemble::WignerSpec{N, ensemble::distribution_from_string(distribution),
                                         seed};
           }),
           py::arg("N"), py::arg("distribution") = "gaussian", py::arg("seed") = 0)
      .def_readonly("N", &ensemble::WignerSpec::N)
      .def_property_readonly(
          "distribution",
          [](const ensemble::WignerSpec& spec) { return ensemble::to_string(spec.distribution); })
      .def_readonly("seed", &ensemble::WignerSpec::seed);

  py::class_<ensemble::HermitianMatrix>(m, "HermitianMatrix")
      .def_readonly("entries", &ensemble::HermitianMatrix::entries)
      .def_readonly("labels", &ensemble::HermitianMatrix::labels)
      .def_readonly("spec", &ensemble::HermitianMatrix::spec)
      .def_property_readonly("N", &ensemble::HermitianMatrix::size)
      .def("entry", &ensemble::HermitianMatrix::entry, py::arg("row_label"),
           py::arg("col_label"));

  m.def(
      "sample_wigner",
      [](long N, const std::string& distribution, std::uint64_t seed) {
        return ensemble::sample_wigner(
            {N, ensemble::distribution_from_string(distribution), seed});
      },
      py::arg("N"), py::arg("distribution") = "gaussian", py::arg("seed") = 0,
      "Seeded Hermitian Wigner sample with the 1/sqrt(N) normalization.");
  m.def("hermitian_from", &make_hermitian, py::arg("entries"),
        "Wrap a square complex array as a matrix with labels 1..N.");
  m.def("matrix_minor", &ensemble::minor, py::arg("H"), py::arg("drop"),
        "Minor obtained by deleting the rows and columns with the given labels.");

  // --- spectral -------------------------------------------------------------
  py::class_<spectral::SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &spectral::SpectralDecomposition::eigenvalues)
      .def_property_readonly("eigenvectors",
                             [](const spectral::SpectralDecomposition& d) -> py::object {
                               if (!d.eigenvectors.has_value()) return py::none();
                               return py::cast(*d.eigenvectors);
                             });

  py::class_<spectral::ResolventMatrix>(m, "ResolventMatrix")
      .def_readonly("values", &spectral::ResolventMatrix::values)
      .def_readonly("labels", &spectral::ResolventMatrix::labels)
      .def("entry", &spectral::ResolventMatrix::entry, py::arg("row_label"),
           py::arg("col_label"));

  py::class_<spectral::IdentityReport>(m, "IdentityReport")
      .def_readonly("schur_diag", &spectral::IdentityReport::schur_diag)
      .def_readonly("minor_diag", &spectral::IdentityReport::minor_diag)
      .def_readonly("offdiag_family", &spectral::IdentityReport::offdiag_family)
      .def_readonly("reciprocal", &spectral::IdentityReport::reciprocal)
      .def_readonly("offdiag_schur", &spectral::IdentityReport::offdiag_schur)
      .def_readonly("ward", &spectral::IdentityReport::ward)
      .def_readonly("max_residual", &spectral::IdentityReport::max_residual);

  py::class_<spectral::ErrorDecomposition>(m, "ErrorDecomposition")
      .def_readonly("z", &spectral::ErrorDecomposition::z)
      .def_readonly("m", &spectral::ErrorDecomposition::m)
      .def_readonly("lambda_", &spectral::ErrorDecomposition::lambda)
      .def_readonly("upsilon", &spectral::ErrorDecomposition::upsilon)
      .def_readonly("zvar", &spectral::ErrorDecomposition::zvar)
      .def_readonly("R", &spectral::ErrorDecomposition::R);

  m.def("eigendecompose", &spectral::eigendecompose, py::arg("H"),
        py::arg("want_vectors") = false);
  m.def("stieltjes", &spectral::stieltjes, py::arg("decomposition"), py::arg("z"));
  m.def("resolvent", &spectral::resolvent, py::arg("H"), py::arg("z"),
        py::arg("drop") = std::vector<int>{});
  m.def("identity_suite", &spectral::identity_suite, py::arg("H"), py::arg("z"));
  m.def("error_terms", &spectral::error_terms, py::arg("H"), py::arg("z"));
  m.def("lambda_from_R", &spectral::lambda_from_R, py::arg("z"), py::arg("R"));

  // --- expansion -------------------------------------------------------------
  py::class_<expansion::ResolventFactor>(m, "ResolventFactor")
      .def_property_readonly("kind",
                             [](const expansion::ResolventFactor& f) {
                               switch (f.kind) {
                                 case expansion::FactorKind::DiagNumerator:
                                   return "diag_numerator";
                                 case expansion::FactorKind::DiagDenominator:
                                   return "diag_denominator";
                                 default:
                                   return "offdiag";
                               }
                             })
      .def_readonly("row", &expansion::ResolventFactor::row)
      .def_readonly("col", &expansion::ResolventFactor::col)
      .def_readonly("upper", &expansion::ResolventFactor::upper)
      .def("__repr__", &expansion::format_factor);

  py::class_<expansion::Monomial>(m, "Monomial")
      .def_readonly("sign", &expansion::Monomial::sign)
      .def_readonly("factors", &expansion::Monomial::factors);

  py::class_<expansion::ExpansionTerm>(m, "ExpansionTerm")
      .def_readonly("sigma", &expansion::ExpansionTerm::sigma)
      .def_readonly("monomial", &expansion::ExpansionTerm::monomial)
      .def_property_readonly("terminal_reason", [](const expansion::ExpansionTerm& t) {
        return t.terminal_reason == expansion::TerminalReason::MaximallyExpanded
                   ? "maximally_expanded"
                   : "offdiag_overflow";
      });

  m.def(
      "lone_labels",
      [](const std::vector<int>& coordinates) {
        const auto result = expansion::lone_labels(coordinates);
        return py::make_tuple(result.positions, result.coords);
      },
      py::arg("coordinates"),
      "Positions (1-based) whose coordinate occurs exactly once, and those coordinates.");
  m.def(
      "expand",
      [](const std::string& type, int k, const std::vector<int>& lone_coords, int q) {
        expansion::ExpansionConfig config;
        config.initial = initial_kind_from(type);
        config.k = k;
        config.lone_coords = lone_coords;
        config.q = q;
        return expansion::expand(config);
      },
      py::arg("type"), py::arg("k"), py::arg("lone_coords"), py::arg("q"));
  m.def("evaluate_monomial", &expansion::evaluate_monomial, py::arg("monomial"), py::arg("H"),
        py::arg("z"));
  m.def(
      "verify_reconstruction",
      [](const std::string& type, int k, const std::vector<int>& lone_coords, int q,
         const ensemble::HermitianMatrix& H, const semicircle::SpectralPoint& z) {
        expansion::ExpansionConfig config;
        config.initial = initial_kind_from(type);
        config.k = k;
        config.lone_coords = lone_coords;
        config.q = q;
        return expansion::verify_reconstruction(config, H, z);
      },
      py::arg("type"), py::arg("k"), py::arg("lone_coords"), py::arg("q"), py::arg("H"),
      py::arg("z"));
  m.def("dump_terms", &expansion::dump_terms, py::arg("terms"));
  m.def("leaf_count_bound", &expansion::leaf_count_bound, py::arg("q"));

  // --- experiments -----------------------------------------------------------
  py::class_<experiments::SampleRecord>(m, "SampleRecord")
      .def_readonly("N", &experiments::SampleRecord::N)
      .def_readonly("E", &experiments::SampleRecord::E)
      .def_readonly("eta", &experiments::SampleRecord::eta)
      .def_readonly("sample_index", &experiments::SampleRecord::sample_index)
      .def_readonly("abs_lambda", &experiments::SampleRecord::abs_lambda)
      .def_readonly("im_lambda", &experiments::SampleRecord::im_lambda)
      .def_readonly("lambda_min", &experiments::SampleRecord::lambda_min)
      .def_readonly("lambda_max", &experiments::SampleRecord::lambda_max)
      .def_readonly("counting_stat", &experiments::SampleRecord::counting_stat)
      .def_readonly("rigidity_stat", &experiments::SampleRecord::rigidity_stat);

  py::class_<experiments::FitResult>(m, "FitResult")
      .def_readonly("slope", &experiments::FitResult::slope)
      .def_readonly("intercept", &experiments::FitResult::intercept)
      .def_readonly("r_squared", &experiments::FitResult::r_squared)
      .def_readonly("stderr_slope", &experiments::FitResult::stderr_slope);

  py::class_<experiments::TailEstimate>(m, "TailEstimate")
      .def_readonly("delta", &experiments::TailEstimate::delta)
      .def_readonly("exceed_count", &experiments::TailEstimate::exceed_count)
      .def_readonly("samples", &experiments::TailEstimate::samples)
      .def_readonly("tail", &experiments::TailEstimate::tail);

  m.def(
      "fluctuation_scan",
      [](const std::vector<long>& N_list, const std::vector<double>& eta_list,
         const std::vector<double>& E_list, long samples, std::uint64_t seed,
         const std::string& distribution, int threads) {
        experiments::ScanConfig config;
        config.N_list = N_list;
        config.eta_list = eta_list;
        config.E_list = E_list;
        config.samples = samples;
        config.base_seed = seed;
        config.distribution = ensemble::distribution_from_string(distribution);
        return experiments::fluctuation_scan(config, threads);
      },
      py::arg("N_list"), py::arg("eta_list"), py::arg("E_list"), py::arg("samples"),
      py::arg("seed") = 0, py::arg("distribution") = "gaussian", py::arg("threads") = 1);
  m.def(
      "spectrum_scan",
      [](const std::vector<long>& N_list, long samples, const std::string& distribution,
         std::uint64_t seed, int threads) {
        return experiments::spectrum_scan(
            N_list, samples, ensemble::distribution_from_string(distribution), seed, threads);
      },
      py::arg("N_list"), py::arg("samples"), py::arg("distribution") = "gaussian",
      py::arg("seed") = 0, py::arg("threads") = 1);
  m.def("loglog_fit", &experiments::loglog_fit, py::arg("x"), py::arg("y"));
  m.def("counting_statistic",
        py::overload_cast<const spectral::SpectralDecomposition&>(
            &experiments::counting_statistic),
        py::arg("decomposition"));
  m.def("rigidity_statistic",
        py::overload_cast<const spectral::SpectralDecomposition&>(
            &experiments::rigidity_statistic),
        py::arg("decomposition"));
  m.def("edge_statistic", &experiments::edge_statistic, py::arg("records"));
  m.def(
      "hanson_wright_tail",
      [](const Eigen::MatrixXcd& A, const std::vector<double>& deltas, long samples,
         std::uint64_t seed) { return experiments::hanson_wright_tail(A, deltas, samples, seed); },
      py::arg("A"), py::arg("deltas"), py::arg("samples"), py::arg("seed") = 0);
  m.def(
      "hanson_wright_tail_kind",
      [](long N, const std::string& kind, const std::vector<double>& deltas, long samples,
         std::uint64_t seed) {
        experiments::QuadraticFormKind k;
        if (kind == "identity") {
          k = experiments::QuadraticFormKind::Identity;
        } else if (kind == "random_resolvent") {
          k = experiments::QuadraticFormKind::RandomResolvent;
        } else {
          throw ValidationError("kind must be 'identity' or 'random_resolvent'");
        }
        return experiments::hanson_wright_tail(N, k, deltas, samples, seed);
      },
      py::arg("N"), py::arg("kind"), py::arg("deltas"), py::arg("samples"), py::arg("seed") = 0);
  m.def("control_parameter", &experiments::control_parameter, py::arg("N"), py::arg("z"),
        py::arg("q"), py::arg("im_lambda_moment"));
}
