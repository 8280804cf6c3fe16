#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json_writer.hpp"
#include "mcmv/ahlfors.hpp"
#include "mcmv/errors.hpp"
#include "mcmv/magic.hpp"
#include "mcmv/oracle.hpp"
#include "mcmv/spectral.hpp"

namespace {

using mcmv::cplx;
using mcmv_cli::complex_pair;
using mcmv_cli::Json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr const char* kSchema = "mcmv-kit/1";

enum Exit { kOk = 0, kFail = 1, kValidation = 2, kNumeric = 3 };

struct Options {
  std::string command;
  std::string input;
  std::string out;
  std::string json_out;
  int grid = 0;
  std::optional<double> tol;
  std::vector<long> range;
  std::string z0 = "0,1";
  int depth = 1;
};

struct Problem {
  std::optional<mcmv::VerblunskySequence> seq;
  std::optional<mcmv::PoleVector> poles;
  std::optional<mcmv::RealSlitSet> gaps;
  std::optional<mcmv::CircleArcSet> arcs;
};

cplx parse_complex(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw mcmv::DomainError(what + ": expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<std::pair<double, double>> parse_intervals(const Json& j, const std::string& what) {
  if (!j.is_array()) throw mcmv::DomainError(what + ": expected a list of [a, b] pairs");
  std::vector<std::pair<double, double>> out;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw mcmv::DomainError(what + ": expected a list of [a, b] pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mcmv::DomainError("cannot open input file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw mcmv::DomainError(std::string("malformed JSON: ") + ex.what());
  }
  if (!j.is_object()) throw mcmv::DomainError("problem description must be a JSON object");

  const bool has_op = j.contains("verblunsky") || j.contains("poles") || j.contains("phase") || j.contains("overrides");
  const bool has_set = j.contains("gaps") || j.contains("arcs");
  if (has_op == has_set) throw mcmv::DomainError("give exactly one of operator data (verblunsky/poles/phase) or set data (gaps/arcs)");

  Problem pb;
  if (has_set) {
    if (j.contains("gaps") && j.contains("arcs")) throw mcmv::DomainError("give either gaps or arcs, not both");
    if (j.contains("gaps")) {
      const auto g = parse_intervals(j["gaps"], "gaps");
      double prev = 0.0;
      for (const auto& [a, b] : g) {
        if (!(a > prev && b > a)) throw mcmv::DomainError("gaps must satisfy 0 < a_1 < b_1 < a_2 < ...");
        prev = b;
      }
      pb.gaps.emplace(g);
    } else {
      pb.arcs.emplace(parse_intervals(j["arcs"], "arcs"));
    }
    return pb;
  }

  if (!j.contains("verblunsky") || !j["verblunsky"].is_array())
    throw mcmv::DomainError("verblunsky: expected a list of [re, im] pairs");
  std::vector<cplx> block;
  for (const Json& e : j["verblunsky"]) block.push_back(parse_complex(e, "verblunsky"));
  if (block.empty() || block.size() % 2) throw mcmv::DomainError("verblunsky block must have even, nonzero length");
  for (const cplx& a : block)
    if (!(std::abs(a) < 1.0)) throw mcmv::DomainError("verblunsky coefficients must lie in the open unit disk");

  std::vector<cplx> poles;
  if (j.contains("poles")) {
    if (!j["poles"].is_array()) throw mcmv::DomainError("poles: expected a list of [re, im] pairs");
    for (const Json& e : j["poles"]) poles.push_back(parse_complex(e, "poles"));
  } else if (block.size() == 2) {
    poles.push_back(0.0);
  }
  if (2 * poles.size() != block.size()) throw mcmv::DomainError("need one pole per pair of verblunsky coefficients");
  if (poles[0] != 0.0) throw mcmv::DomainError("the first pole must be 0");
  for (const cplx& z : poles)
    if (!(std::abs(z) < 1.0)) throw mcmv::DomainError("poles must lie in the open unit disk");

  double phase = 0.0;
  if (j.contains("phase")) {
    if (!j["phase"].is_number()) throw mcmv::DomainError("phase must be a number");
    phase = j["phase"].get<double>();
  }
  mcmv::VerblunskySequence seq(block, phase);
  if (j.contains("overrides")) {
    if (!j["overrides"].is_array()) throw mcmv::DomainError("overrides: expected a list of {k, a} objects");
    for (const Json& e : j["overrides"]) {
      if (!e.is_object() || !e.contains("k") || !e["k"].is_number_integer() || !e.contains("a"))
        throw mcmv::DomainError("overrides: expected a list of {k, a} objects");
      const cplx a = parse_complex(e["a"], "overrides");
      if (!(std::abs(a) < 1.0)) throw mcmv::DomainError("override values must lie in the open unit disk");
      seq = seq.with_override(e["k"].get<long>(), a);
    }
  }
  pb.seq.emplace(seq);
  pb.poles.emplace(poles);
  return pb;
}

double wrapped(double t) {
  const double w = mcmv::wrap_angle(t);
  return w >= kTwoPi ? 0.0 : w;
}

Json arc_pair(const mcmv::Arc& a) { return Json::array({wrapped(a.start), wrapped(a.end)}); }

Json header(const std::string& command, double tol) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["tol"] = tol;
  return j;
}

Json rational_json(const mcmv::SuitableRational& r) {
  Json terms = Json::array();
  for (const mcmv::SuitableTerm& t : r.terms) {
    Json coeffs = Json::array();
    for (const cplx& c : t.coeffs) coeffs.push_back(complex_pair(c));
    terms.push_back({{"pole", complex_pair(t.pole)}, {"coeffs", coeffs}});
  }
  return {{"c", r.c}, {"terms", terms}};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mcmv::DomainError("cannot write " + path);
  out << text;
}

// CSV goes to --out (stdout by default), the JSON sidecar to --json or <out>.json.
void emit_pair(const Options& o, const std::string& csv, const Json& j) {
  emit(o.out, csv);
  std::string side = o.json_out;
  if (side.empty() && !o.out.empty()) side = o.out + ".json";
  if (!side.empty()) emit(side, mcmv_cli::to_text(j));
}

std::string csv_number(double v) { return mcmv_cli::format_double(v); }

mcmv::MonodromyEvaluator require_operator(const Problem& pb) {
  if (!pb.seq) throw mcmv::DomainError("this command needs operator data (verblunsky, poles, phase)");
  return mcmv::MonodromyEvaluator(*pb.seq, *pb.poles);
}

int cmd_bands(const Options& o, const Problem& pb) {
  const auto ev = require_operator(pb);
  const double tol = o.tol.value_or(1e-9);
  const int grid = o.grid > 0 ? o.grid : 2048;
  const mcmv::BandDecomposition bd = mcmv::bands_from_discriminant(ev, grid, tol);
  Json j = header("bands", tol);
  j["grid"] = grid;
  j["g"] = bd.open_gaps();
  Json bands = Json::array();
  if (bd.full_circle())
    bands.push_back(Json::array({0.0, kTwoPi}));
  else
    for (const mcmv::Arc& a : bd.bands) bands.push_back(arc_pair(a));
  j["bands"] = bands;
  Json edges = Json::array();
  for (const mcmv::Arc& g : bd.gaps) edges.push_back(arc_pair(g));
  j["gap_edges"] = edges;
  Json closed = Json::array();
  for (double t : bd.closed_gaps) closed.push_back(wrapped(t));
  j["closed_gaps"] = closed;
  Json crit = Json::array();
  for (const mcmv::CriticalPoint& c : bd.critical_points) crit.push_back({{"t", wrapped(c.t)}, {"discriminant", c.value}});
  j["critical_points"] = crit;
  emit(o.out, mcmv_cli::to_text(j));
  return kOk;
}

int cmd_magic(const Options& o, const Problem& pb) {
  const auto ev = require_operator(pb);
  const double tol = o.tol.value_or(1e-9);
  const long p = ev.period();
  long lo = 0, hi = 3 * p;
  if (!o.range.empty()) {
    lo = o.range[0];
    hi = o.range[1];
  }
  const mcmv::MagicReport rep = mcmv::magic_check(*pb.seq, *pb.poles, lo, hi, tol);
  Json j = header("magic", tol);
  j["range"] = Json::array({lo, hi});
  j["max_deviation"] = rep.max_deviation;
  Json diag = Json::array();
  for (const auto& d : rep.per_diagonal) diag.push_back({{"offset", d.offset}, {"max_abs", d.max_abs}});
  j["per_diagonal"] = diag;
  j["pass"] = rep.pass;
  j["discriminant"] = rational_json(rep.discriminant);
  emit(o.out, mcmv_cli::to_text(j));
  return rep.pass ? kOk : kFail;
}

int cmd_divisor(const Options& o, const Problem& pb) {
  const auto ev = require_operator(pb);
  const double tol = o.tol.value_or(1e-9);
  const int grid = o.grid > 0 ? o.grid : 2048;
  const mcmv::BandDecomposition bd = mcmv::bands_from_discriminant(ev, grid, tol);
  Json j = header("divisor", tol);
  Json div = Json::array();
  for (const mcmv::DivisorPoint& d : mcmv::divisor_extract(ev, bd))
    div.push_back({{"gap", d.gap},
                   {"t", wrapped(d.x)},
                   {"point", complex_pair(std::polar(1.0, d.x))},
                   {"epsilon", d.epsilon},
                   {"at_edge", d.at_edge}});
  j["divisor"] = div;
  emit(o.out, mcmv_cli::to_text(j));
  return kOk;
}

int cmd_measure(const Options& o, const Problem& pb) {
  const auto ev = require_operator(pb);
  const double tol = o.tol.value_or(1e-13);
  const int grid = o.grid > 0 ? o.grid : 4096;
  const mcmv::BandDecomposition bd = mcmv::bands_from_discriminant(ev);
  const mcmv::SpectralMeasure sm = mcmv::spectral_measure(ev, bd, tol);

  std::string csv = "t,nu_ac\n";
  double trapezoid = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double t = kTwoPi * k / grid;
    const double d = mcmv::ac_density(ev, t);
    trapezoid += d / grid;
    csv += csv_number(t) + "," + csv_number(d) + "\n";
  }
  Json j = header("measure", tol);
  j["grid"] = grid;
  j["ac_mass"] = sm.ac_mass;
  Json masses = Json::array();
  double atoms = 0.0;
  for (const mcmv::PointMass& m : sm.masses) {
    masses.push_back({{"t", wrapped(m.t)}, {"weight", m.weight}});
    atoms += m.weight;
  }
  j["masses"] = masses;
  j["total"] = sm.total();
  j["trapezoid_total"] = trapezoid + atoms;
  emit_pair(o, csv, j);
  return kOk;
}

cplx parse_z0(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re >> comma >> im) || comma != ',') throw mcmv::DomainError("--z0 expects re,im");
  return {re, im};
}

int cmd_ahlfors(const Options& o, const Problem& pb) {
  const double tol = o.tol.value_or(1e-12);
  if (pb.arcs) {
    const mcmv::CircleArcSet& set = *pb.arcs;
    const int grid = o.grid > 0 ? o.grid : 1024;
    std::string csv = "t,delta_e\n";
    for (int k = 0; k < grid; ++k) {
      const double t = kTwoPi * (k + 0.5) / grid;
      csv += csv_number(t) + "," + csv_number(std::real(mcmv::generalized_discriminant(set, std::polar(1.0, t)))) + "\n";
    }
    const mcmv::PoleVector z = mcmv::pole_vector_of_set(set);
    Json j = header("ahlfors", tol);
    j["genus"] = set.genus();
    Json poles = Json::array();
    for (const cplx& p : z.points()) poles.push_back(complex_pair(p));
    j["poles"] = poles;
    j["discriminant"] = rational_json(mcmv::partial_fractions(
        [&](cplx x) { return mcmv::generalized_discriminant(set, x); }, z.distinct(), std::max(tol, 1e-10)));
    emit_pair(o, csv, j);
    return kOk;
  }
  if (!pb.gaps) throw mcmv::DomainError("ahlfors needs set data (gaps or arcs)");
  const mcmv::RealSlitSet& e = *pb.gaps;
  const cplx z0 = parse_z0(o.z0);
  if (!(std::imag(z0) > 0.0)) throw mcmv::DomainError("--z0 must lie in the upper half-plane");
  const int grid = o.grid > 0 ? o.grid : 1024;
  const double span = 2.0 * (e.genus() ? e.gaps().back().second : 1.0) + 1.0;

  std::string csv = "x,re_w,im_w,delta\n";
  double unimodular = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double x = -span + 2.0 * span * (k + 0.5) / grid;
    const cplx w = mcmv::ahlfors_boundary(e, z0, x);
    if (e.in_set(x)) unimodular = std::max(unimodular, std::abs(std::abs(w) - 1.0));
    csv += csv_number(x) + "," + csv_number(std::real(w)) + "," + csv_number(std::imag(w)) + "," +
           csv_number(mcmv::delta_real_boundary(e, z0, x)) + "\n";
  }
  Json j = header("ahlfors", tol);
  j["z0"] = complex_pair(z0);
  j["genus"] = e.genus();
  Json zeros = Json::array();
  for (const cplx& z : mcmv::ahlfors_zeros(e, z0)) zeros.push_back(complex_pair(z));
  j["zeros"] = zeros;
  Json crit = Json::array();
  for (const mcmv::RealCriticalPoint& c : mcmv::critical_points(e, z0))
    crit.push_back({{"x", c.x}, {"delta", c.value}, {"in_gap", c.in_gap}});
  j["critical_points"] = crit;
  j["max_unimodular_error"] = unimodular;
  j["pass"] = unimodular <= std::max(tol, 1e-12);
  emit_pair(o, csv, j);
  return j["pass"].get<bool>() ? kOk : kFail;
}

int cmd_stripping(const Options& o, const Problem& pb) {
  const auto ev = require_operator(pb);
  const double tol = o.tol.value_or(1e-10);
  if (o.depth < 1) throw mcmv::DomainError("--depth must be at least 1");
  const double th = pb.seq->theta();
  std::vector<mcmv::MonodromyEvaluator> periods;
  for (int d = 0; d < o.depth; ++d)
    periods.emplace_back(pb.seq->shifted(static_cast<long>(d) * ev.period()), *pb.poles);
  double residual = 0.0, min_re = 1e300;
  int samples = 0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b, ++samples) {
      const cplx z = std::polar(0.095 * (a + 0.5), kTwoPi * (b + 0.25) / 10);
      const cplx f = mcmv::caratheodory_eval(ev, z);
      min_re = std::min(min_re, std::real(f));
      mcmv::Mat2 m = ev.m_matrix(z);
      for (int d = 1; d < o.depth; ++d) m = m * periods[d].m_matrix(z);
      const cplx s = std::polar(1.0, -2.0 * th * o.depth) * (f - 1.0) / (f + 1.0);
      const cplx f1 = (1.0 + s) / (1.0 - s);
      residual = std::max(residual, std::abs(mcmv::coefficient_stripping(f1, m) - f) / std::max(1.0, std::abs(f)));
    }
  Json j = header("stripping", tol);
  j["depth"] = o.depth;
  j["samples"] = samples;
  j["max_residual"] = residual;
  j["min_re_caratheodory"] = min_re;
  const bool pass = residual <= tol && min_re > 0.0;
  j["pass"] = pass;
  emit(o.out, mcmv_cli::to_text(j));
  return pass ? kOk : kFail;
}

int cmd_roundtrip(const Options& o, const Problem& pb) {
  const auto ev = require_operator(pb);
  const double tol = o.tol.value_or(1e-7);
  const mcmv::BandDecomposition bd = mcmv::bands_from_discriminant(ev);
  const mcmv::SpectralMeasure sm = mcmv::spectral_measure(ev, bd);
  mcmv::QuadratureMeasure qm;
  for (const mcmv::Arc& a : sm.pieces) qm.arcs.emplace_back(a.start, a.end);
  qm.density = [&](double t) { return mcmv::ac_density(ev, t); };
  for (const mcmv::PointMass& m : sm.masses) qm.atoms.emplace_back(m.t, m.weight);
  const int count = 2 * ev.period();
  const auto ahat = mcmv::gram_schmidt_orf(qm, *pb.poles, count).recovered_coefficients();

  Json j = header("roundtrip", tol);
  j["count"] = count;
  double err = 0.0;
  Json rows = Json::array();
  for (int k = 0; k < count; ++k) {
    const double e = std::abs(ahat[k] - pb.seq->a(k));
    err = std::max(err, e);
    rows.push_back({{"k", k}, {"a", complex_pair(pb.seq->a(k))}, {"recovered", complex_pair(ahat[k])}, {"error", e}});
  }
  j["max_error"] = err;
  j["pass"] = err < tol;
  j["coefficients"] = rows;
  emit(o.out, mcmv_cli::to_text(j));
  return err < tol ? kOk : kFail;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-periodic MCMV operators: bands, magic formula, divisor, measure, Ahlfors data"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> commands{"bands", "magic", "divisor", "measure", "ahlfors", "stripping", "roundtrip"};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", o.input, "problem description (JSON)")->required();
    sub->add_option("--out", o.out, "output path (stdout if omitted)");
    sub->add_option("--grid", o.grid, "sampling grid size");
    sub->add_option("--tol", o.tol, "tolerance");
    if (name == "magic") sub->add_option("--range", o.range, "window rows LO HI")->expected(2);
    if (name == "measure" || name == "ahlfors") sub->add_option("--json", o.json_out, "JSON sidecar path");
    if (name == "ahlfors") sub->add_option("--z0", o.z0, "upper half-plane point re,im");
    if (name == "stripping") sub->add_option("--depth", o.depth, "periods to strip");
    sub->callback([&o, name] { o.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    const Problem pb = load_problem(o.input);
    if (o.command == "bands") return cmd_bands(o, pb);
    if (o.command == "magic") return cmd_magic(o, pb);
    if (o.command == "divisor") return cmd_divisor(o, pb);
    if (o.command == "measure") return cmd_measure(o, pb);
    if (o.command == "ahlfors") return cmd_ahlfors(o, pb);
    if (o.command == "stripping") return cmd_stripping(o, pb);
    return cmd_roundtrip(o, pb);
  } catch (const mcmv::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}
