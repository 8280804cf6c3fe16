#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcmv/ahlfors.hpp"
#include "mcmv/errors.hpp"
#include "mcmv/magic.hpp"
#include "mcmv/oracle.hpp"
#include "mcmv/spectral.hpp"

namespace py = pybind11;
using namespace mcmv;
using namespace pybind11::literals;

namespace {

Eigen::Matrix2cd to_eigen(const Mat2& m) {
  Eigen::Matrix2cd out;
  out << m.m11, m.m12, m.m21, m.m22;
  return out;
}

py::list arcs_list(const std::vector<Arc>& arcs) {
  py::list out;
  for (const Arc& a : arcs) out.append(py::make_tuple(a.start, a.end));
  return out;
}

py::dict rational_dict(const SuitableRational& r) {
  py::list terms;
  for (const SuitableTerm& t : r.terms) terms.append(py::dict("pole"_a = t.pole, "coeffs"_a = t.coeffs));
  return py::dict("c"_a = r.c, "terms"_a = terms);
}

std::vector<cplx> roundtrip(const MonodromyEvaluator& ev, int count) {
  const BandDecomposition bd = bands_from_discriminant(ev);
  const SpectralMeasure sm = spectral_measure(ev, bd);
  QuadratureMeasure qm;
  for (const Arc& a : sm.pieces) qm.arcs.emplace_back(a.start, a.end);
  qm.density = [&](double t) { return ac_density(ev, t); };
  for (const PointMass& m : sm.masses) qm.atoms.emplace_back(m.t, m.weight);
  return gram_schmidt_orf(qm, ev.poles(), count).recovered_coefficients();
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Phase-periodic MCMV operators";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ZeroDivisionError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  py::class_<VerblunskySequence>(m, "VerblunskySequence")
      .def(py::init<std::vector<cplx>, double>(), "block"_a, "theta"_a = 0.0)
      .def("a", &VerblunskySequence::a, "k"_a)
      .def("with_override", &VerblunskySequence::with_override, "k"_a, "value"_a)
      .def("shifted", &VerblunskySequence::shifted, "s"_a)
      .def_property_readonly("period", &VerblunskySequence::period)
      .def_property_readonly("theta", &VerblunskySequence::theta)
      .def_property_readonly("block", &VerblunskySequence::block);

  py::class_<PoleVector>(m, "PoleVector")
      .def(py::init<std::vector<cplx>>(), "points"_a)
      .def_property_readonly("points", &PoleVector::points)
      .def("__len__", &PoleVector::n);

  py::class_<MonodromyEvaluator>(m, "MonodromyEvaluator")
      .def(py::init<VerblunskySequence, PoleVector>(), "seq"_a, "poles"_a)
      .def("discriminant", &MonodromyEvaluator::discriminant, "z"_a)
      .def("b", &MonodromyEvaluator::b, "z"_a)
      .def("monodromy", [](const MonodromyEvaluator& ev, cplx z) { return to_eigen(ev.monodromy(z)); }, "z"_a)
      .def("m_theta", [](const MonodromyEvaluator& ev, cplx z) { return to_eigen(ev.m_theta(z)); }, "z"_a)
      .def("uv", &MonodromyEvaluator::uv, "z"_a)
      .def_property_readonly("period", &MonodromyEvaluator::period);

  m.def(
      "cmv_window", [](const VerblunskySequence& seq, long lo, long hi) { return cmv_window(seq, lo, hi).entries; },
      "seq"_a, "lo"_a, "hi"_a);
  m.def(
      "mcmv_window",
      [](const VerblunskySequence& seq, const PoleVector& z, long lo, long hi) { return mcmv_window(seq, z, lo, hi).entries; },
      "seq"_a, "poles"_a, "lo"_a, "hi"_a);
  m.def(
      "blaschke_of_mcmv",
      [](const VerblunskySequence& seq, const PoleVector& z, int j, long lo, long hi) {
        return blaschke_of_mcmv(seq, z, j, lo, hi).entries;
      },
      "seq"_a, "poles"_a, "j"_a, "lo"_a, "hi"_a);

  m.def(
      "bands",
      [](const MonodromyEvaluator& ev, int grid, double tol) {
        const BandDecomposition bd = bands_from_discriminant(ev, grid, tol);
        py::list crit;
        for (const CriticalPoint& c : bd.critical_points) crit.append(py::make_tuple(c.t, c.value));
        return py::dict("bands"_a = arcs_list(bd.bands), "gaps"_a = arcs_list(bd.gaps),
                        "closed_gaps"_a = bd.closed_gaps, "critical_points"_a = crit, "g"_a = bd.open_gaps());
      },
      "ev"_a, "grid"_a = 2048, "tol"_a = 1e-9);
  m.def(
      "divisor",
      [](const MonodromyEvaluator& ev) {
        py::list out;
        for (const DivisorPoint& d : divisor_extract(ev, bands_from_discriminant(ev)))
          out.append(py::dict("gap"_a = d.gap, "t"_a = d.x, "epsilon"_a = d.epsilon, "at_edge"_a = d.at_edge));
        return out;
      },
      "ev"_a);
  m.def("caratheodory", &caratheodory_eval, "ev"_a, "z"_a);
  m.def("ac_density", &ac_density, "ev"_a, "t"_a);
  m.def("lyapunov", &lyapunov, "ev"_a, "z"_a);
  m.def(
      "spectral_measure",
      [](const MonodromyEvaluator& ev) {
        const SpectralMeasure sm = spectral_measure(ev, bands_from_discriminant(ev));
        py::list masses;
        for (const PointMass& p : sm.masses) masses.append(py::make_tuple(p.t, p.weight));
        return py::dict("ac_mass"_a = sm.ac_mass, "masses"_a = masses, "total"_a = sm.total());
      },
      "ev"_a);

  m.def("partial_fractions", [](const MonodromyEvaluator& ev) { return rational_dict(partial_fractions(ev)); }, "ev"_a);
  m.def(
      "magic_check",
      [](const VerblunskySequence& seq, const PoleVector& z, long lo, long hi, double tol) {
        const MagicReport r = magic_check(seq, z, lo, hi, tol);
        py::list diag;
        for (const DiagonalDeviation& d : r.per_diagonal) diag.append(py::make_tuple(d.offset, d.max_abs));
        return py::dict("max_deviation"_a = r.max_deviation, "per_diagonal"_a = diag, "tol"_a = r.tol, "pass"_a = r.pass);
      },
      "seq"_a, "poles"_a, "lo"_a, "hi"_a, "tol"_a = 1e-9);
  m.def("roundtrip", &roundtrip, "ev"_a, "count"_a);

  m.def(
      "ahlfors_eval",
      [](const std::vector<std::pair<double, double>>& gaps, cplx z0, cplx z) { return ahlfors_eval(RealSlitSet(gaps), z0, z); },
      "gaps"_a, "z0"_a, "z"_a);
  m.def(
      "ahlfors_zeros",
      [](const std::vector<std::pair<double, double>>& gaps, cplx z0) { return ahlfors_zeros(RealSlitSet(gaps), z0); },
      "gaps"_a, "z0"_a);
  m.def(
      "critical_points",
      [](const std::vector<std::pair<double, double>>& gaps, cplx z0) {
        py::list out;
        for (const RealCriticalPoint& c : critical_points(RealSlitSet(gaps), z0))
          out.append(py::make_tuple(c.x, c.value, c.in_gap));
        return out;
      },
      "gaps"_a, "z0"_a);
  m.def(
      "generalized_discriminant",
      [](const std::vector<std::pair<double, double>>& arcs, cplx z) { return generalized_discriminant(CircleArcSet(arcs), z); },
      "arcs"_a, "z"_a);
  m.def(
      "pole_vector_of_set",
      [](const std::vector<std::pair<double, double>>& arcs) { return pole_vector_of_set(CircleArcSet(arcs)).points(); },
      "arcs"_a);
}
