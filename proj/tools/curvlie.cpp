// curvlie: command-line front end for the curvature and classification library.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curvlie/canonical.hpp"
#include "curvlie/document.hpp"
#include "curvlie/geometry.hpp"
#include "curvlie/heintze.hpp"
#include "curvlie/negativity.hpp"
#include "curvlie/verification.hpp"

using namespace curvlie;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kIndeterminate = 3 };

struct RunConfig {
  ToleranceConfig tc;
  std::uint64_t seed = 0;
  bool json = false;
};

// ---- formatting ----------------------------------------------------------

std::string num(double x) {
  if (x == 0) x = 0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v(i));
  return s + ")";
}

std::string cplx_str(const cplx& z) {
  if (z.imag() == 0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

void print_matrix(std::ostream& os, const Mat& m, const std::string& indent = "  ") {
  std::vector<std::string> cells;
  size_t w = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      cells.push_back(num(m(i, j)));
      w = std::max(w, cells.back().size());
    }
  for (int i = 0; i < m.rows(); ++i) {
    os << indent;
    for (int j = 0; j < m.cols(); ++j) {
      const std::string& c = cells[static_cast<size_t>(i * m.cols() + j)];
      os << std::string(w - c.size() + (j ? 2 : 0), ' ') << c;
    }
    os << "\n";
  }
}

/// "a e1 + b e3" for a coordinate vector.
std::string combo(const Vec& v, double tiny = 0) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) <= tiny) continue;
    const double a = std::abs(v(i));
    if (s.empty())
      s += v(i) < 0 ? "-" : "";
    else
      s += v(i) < 0 ? " - " : " + ";
    if (a != 1) s += num(a) + " ";
    s += "e" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_json(const Mat& m) { return doc_detail::matrix_json(m); }

json tensor_json(const Tensor& t) {
  json a = json::array();
  for (double x : t.data()) a.push_back(x);
  return json{{"dim", t.dim()}, {"rank", t.rank()}, {"order", "row-major, last index fastest"}, {"data", a}};
}

json cplx_json(const std::vector<cplx>& z) {
  json a = json::array();
  for (const auto& c : z) a.push_back(json::array({c.real(), c.imag()}));
  return a;
}

json params_json(Family f, const Params& p) {
  json o = json::object();
  const auto& names = family_info(f).params;
  for (size_t i = 0; i < p.size(); ++i) o[names[i]] = p[i];
  return o;
}

std::string params_str(Family f, const Params& p) {
  const auto& names = family_info(f).params;
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + names[i] + "=" + num(p[i]);
  return s;
}

void emit(const RunConfig& rc, const json& j, const std::string& human) {
  if (rc.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

// ---- input ---------------------------------------------------------------

AlgebraDocument load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

// ---- commands ------------------------------------------------------------

int cmd_check(const RunConfig& rc, const std::string& path) {
  const AlgebraDocument doc = load(path);
  const MetricAlgebra g = document_metric_algebra(doc, rc.tc);
  const LieAlgebra& L = g.alg;
  std::vector<int> lcs, ds;
  for (const auto& s : lower_central_series(L, rc.tc)) lcs.push_back(s.dim());
  for (const auto& s : derived_series(L, rc.tc)) ds.push_back(s.dim());
  const bool solvable = is_solvable(L, rc.tc), nilpotent = is_nilpotent(L, rc.tc);
  SncVerdict v;
  if (solvable) {
    v = snc_test_auto(g, rc.tc);
  } else {
    v.derived = derived_subalgebra(L, rc.tc);
    v.reason = "not solvable";
  }

  json j{{"schema", 1}, {"command", "check"}, {"dim", L.dim()}, {"jacobi_defect", jacobi_defect(L)},
         {"solvable", solvable}, {"nilpotent", nilpotent}, {"lower_central_series", lcs}, {"derived_series", ds},
         {"derived_dim", v.derived.dim()}};
  json s{{"is_snc", v.is_snc}, {"codim_ok", v.codim_ok}, {"reason", v.reason}};
  s["witness_A"] = v.witness_A ? vec_json(*v.witness_A) : json(nullptr);
  s["flipped"] = v.flipped;
  s["spectrum"] = cplx_json(v.spectrum);
  j["snc"] = s;

  std::ostringstream h;
  auto dims = [](const std::vector<int>& d) {
    std::string r;
    for (size_t i = 0; i < d.size(); ++i) r += (i ? " > " : "") + std::to_string(d[i]);
    return r;
  };
  h << "dimension            " << L.dim() << "\n";
  h << "Jacobi defect        " << num(jacobi_defect(L)) << "\n";
  h << "solvable             " << (solvable ? "yes" : "no") << "\n";
  h << "nilpotent            " << (nilpotent ? "yes" : "no") << "\n";
  h << "lower central series " << dims(lcs) << "\n";
  h << "derived series       " << dims(ds) << "\n";
  h << "derived algebra      dim " << v.derived.dim() << ", codimension " << L.dim() - v.derived.dim() << "\n";
  h << "SNC                  " << (v.is_snc ? "yes" : "no (" + v.reason + ")") << "\n";
  if (v.witness_A) h << "witness A            " << vec_str(*v.witness_A) << (v.flipped ? " (sign flipped)" : "") << "\n";
  if (!v.spectrum.empty()) {
    h << "spectrum of ad A|g'  {";
    for (size_t i = 0; i < v.spectrum.size(); ++i) h << (i ? ", " : "") << cplx_str(v.spectrum[i]);
    h << "}\n";
  }
  emit(rc, j, h.str());
  return v.is_snc ? kOk : kNegative;
}

int cmd_curvature(const RunConfig& rc, const std::string& path, bool scan, int samples) {
  const AlgebraDocument doc = load(path);
  const MetricAlgebra g = document_metric_algebra(doc, rc.tc);
  const CurvatureReport r = curvature_report(g, rc.tc);
  const int n = g.dim();
  const bool identity = g.gram == Mat::Identity(n, n);

  json j{{"schema", 1}, {"command", "curvature"}, {"dim", n}};
  j["frame"] = mat_json(r.basis);
  j["u"] = tensor_json(r.u);
  j["connection"] = tensor_json(r.connection);
  j["riemann"] = tensor_json(r.riemann);
  j["ricci"] = mat_json(r.ricci);
  j["scalar"] = r.scalar;
  j["einstein"] = r.einstein ? json(*r.einstein) : json(nullptr);
  j["symmetric_space"] = r.symmetric_space;
  j["nabla_r_norm"] = r.nabla_r_norm;

  std::ostringstream h;
  if (!identity) h << "all tensors refer to the orthonormal frame f_a = sum_b P(b,a) e_b with P =\n";
  if (!identity) print_matrix(h, r.basis);
  const std::string e = identity ? "e" : "f";
  auto name = [&](const std::string& s) {
    std::string out = s;
    if (!identity)
      for (auto& c : out)
        if (c == 'e') c = 'f';
    return out;
  };
  h << "U(" << e << "i, " << e << "j), i <= j, nonzero entries:\n";
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Vec u(n);
      for (int k = 0; k < n; ++k) u(k) = r.u(a, b, k);
      if (max_abs(u) > 1e-15)
        h << "  U(" << e << a + 1 << ", " << e << b + 1 << ") = " << name(combo(u, 1e-15)) << "\n";
    }
  h << "connection, nonzero entries:\n";
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec c(n);
      for (int k = 0; k < n; ++k) c(k) = r.connection(a, b, k);
      if (max_abs(c) > 1e-15)
        h << "  nabla_" << e << a + 1 << " " << e << b + 1 << " = " << name(combo(c, 1e-15)) << "\n";
    }
  h << "Ricci:\n";
  print_matrix(h, r.ricci);
  h << "scalar curvature     " << num(r.scalar) << "\n";
  h << "Einstein             " << (r.einstein ? "yes, lambda = " + num(*r.einstein) : std::string("no")) << "\n";
  h << "|nabla R|            " << num(r.nabla_r_norm) << "\n";
  h << "locally symmetric    " << (r.symmetric_space ? "yes" : "no") << "\n";

  bool snc = false;
  if (is_solvable(g.alg, rc.tc)) snc = snc_test_auto(g, rc.tc).is_snc;
  if (snc) {
    HeintzeReport hz = heintze_check(g, rc.tc);
    json hj{{"pass", hz.pass}, {"a", hz.a}, {"b", hz.b}, {"c", hz.c}, {"failed_at", hz.failed_at},
            {"lambda", hz.lambda}, {"dim_a1", hz.dim_a1}, {"dim_a2", hz.dim_a2}};
    j["heintze"] = hj;
    h << "Heintze conditions   "
      << (hz.pass ? "satisfied, lambda = " + num(hz.lambda) : "fail at (" + hz.failed_at + ")") << "\n";
  }
  if (scan) {
    ScanOptions so;
    so.samples = samples;
    so.seed = rc.seed;
    NegativityResult nr = negativity_scan(g, so);
    j["negativity"] = {{"max_K", nr.max_K}, {"x", vec_json(nr.x)}, {"y", vec_json(nr.y)}, {"samples", samples},
                       {"seed", rc.seed}};
    h << "max sectional K      " << num(nr.max_K) << " (lower bound, " << samples << " samples, seed " << rc.seed
      << ")\n";
  }
  emit(rc, j, h.str());
  return kOk;
}

int cmd_canonicalize(const RunConfig& rc, const std::string& path) {
  const AlgebraDocument doc = load(path);
  const MetricAlgebra g = document_metric_algebra(doc, rc.tc);
  if (g.dim() != 4 && g.dim() != 5) throw InputError("canonicalize: dimension must be 4 or 5");
  if (!is_solvable(g.alg, rc.tc) || !snc_test_auto(g, rc.tc).is_snc) {
    json j{{"schema", 1}, {"command", "canonicalize"}, {"snc", false}};
    emit(rc, j, "not an SNC algebra; no canonical form\n");
    return kNegative;
  }
  const CanonicalForm f = classify(g, rc.tc);

  json j{{"schema", 1}, {"command", "canonicalize"}, {"snc", true}, {"family", f.tag()},
         {"params", params_json(f.family, f.params)}, {"nilradical", nil_tag(f.nil)}};
  j["derivation"] = mat_json(f.derivation);
  j["adapted_basis"] = mat_json(f.adapted_basis);
  j["witness_A"] = vec_json(f.witness_A);
  json trail = json::array();
  for (const auto& st : f.trail)
    trail.push_back({{"label", st.label}, {"method", st.method}, {"scale", st.scale}, {"p", mat_json(st.p)},
                     {"source", mat_json(st.source)}, {"target", mat_json(st.target)},
                     {"automorphism", st.automorphism}, {"residual", st.residual}});
  j["trail"] = trail;
  j["notes"] = f.notes;

  std::ostringstream h;
  h << f.tag();
  if (!f.params.empty()) h << ", " << params_str(f.family, f.params);
  h << "\n";
  h << "nilradical           " << nil_tag(f.nil) << "\n";
  h << "derivation (columns are images of e_j):\n";
  print_matrix(h, f.derivation);
  h << "trail (target = scale * P * source * P^-1):\n";
  for (size_t i = 0; i < f.trail.size(); ++i) {
    const auto& st = f.trail[i];
    h << "  " << i + 1 << ". " << st.label << " [" << st.method << "]";
    if (st.scale != 1) h << ", scale " << num(st.scale);
    h << ", residual " << num(st.residual) << "\n";
  }
  for (const auto& n : f.notes) h << "note: " << n << "\n";
  emit(rc, j, h.str());
  return kOk;
}

std::vector<Params> grid_points(Family f, const std::vector<double>& grid) {
  const size_t np = family_info(f).params.size();
  if (grid.empty()) return canonical_grid(f);
  if (np == 0) return {Params{}};
  std::vector<Params> out = {Params{}};
  for (size_t k = 0; k < np; ++k) {
    std::vector<Params> next;
    for (const auto& p : out)
      for (double x : grid) {
        Params q = p;
        q.push_back(x);
        next.push_back(q);
      }
    out = std::move(next);
  }
  std::vector<Params> kept;
  for (const auto& p : out)
    if (in_printed_range(f, p)) kept.push_back(p);
  return kept;
}

int cmd_catalog(const RunConfig& rc, int dim, const std::string& tag, const std::vector<double>& grid) {
  std::vector<Family> fams;
  if (!tag.empty()) {
    auto f = family_from_tag(tag);
    if (!f) throw InputError("unknown family '" + tag + "'");
    if (dim && family_info(*f).dim != dim) throw InputError("family " + tag + " is not of dimension " + std::to_string(dim));
    fams.push_back(*f);
  } else {
    if (dim != 4 && dim != 5) throw InputError("catalog: --dim must be 4 or 5");
    for (const auto& i : all_families())
      if (i.dim == dim) fams.push_back(i.family);
  }
  if (!grid.empty() && tag.empty()) throw InputError("catalog: --grid needs --family");
  for (double x : grid)
    if (!std::isfinite(x)) throw InputError("catalog: non-finite grid value");

  json list = json::array();
  std::ostringstream h;
  for (Family f : fams) {
    const FamilyInfo& info = family_info(f);
    json fj{{"family", info.tag}, {"nilradical", nil_tag(info.nil)}, {"params", info.params},
            {"printed_range", info.printed_range}, {"canonical_range", info.canonical_range},
            {"realizable", printed_is_realizable(f)}};
    h << info.tag << "  nilradical " << nil_tag(info.nil);
    if (!info.params.empty()) {
      h << "  params";
      for (const auto& p : info.params) h << " " << p;
      h << "  range " << info.printed_range;
      if (info.canonical_range != info.printed_range) h << "  canonical " << info.canonical_range;
    }
    h << "\n";
    std::vector<Params> pts;
    if (!tag.empty()) {
      pts = grid_points(f, grid);
      if (!grid.empty() && pts.empty()) throw InputError("catalog: no grid point lies in the range of " + info.tag);
    } else {
      auto g = canonical_grid(f);
      if (!g.empty()) pts.push_back(g.front());
    }
    json docs = json::array();
    if (!printed_is_realizable(f) && f != Family::F5B2) {
      h << "  not realizable as printed; no documents\n";
      fj["documents"] = docs;
      list.push_back(fj);
      continue;
    }
    for (const Params& p : pts) {
      const MetricAlgebra g = catalog_instantiate(f, p, rc.tc);
      json meta{{"family", info.tag}, {"params", params_json(f, p)}};
      const AlgebraDocument d = make_document(g, meta, catalog_derivation(f, p));
      const CurvatureReport r = curvature_report(g, rc.tc);
      json cj{{"scalar", r.scalar}, {"einstein", r.einstein ? json(*r.einstein) : json(nullptr)},
              {"symmetric_space", r.symmetric_space}, {"nabla_r_norm", r.nabla_r_norm}};
      docs.push_back({{"params", params_json(f, p)}, {"document", to_json(d)}, {"curvature", cj}});
      h << "  " << (p.empty() ? std::string("(no parameters)") : params_str(f, p)) << "\n";
      for (const auto& b : d.brackets)
        h << "    [e" << b.i << ", e" << b.j << "] = "
          << combo(Eigen::Map<const Vec>(b.coeffs.data(), static_cast<Eigen::Index>(b.coeffs.size()))) << "\n";
      h << "    scalar " << num(r.scalar) << ", Einstein "
        << (r.einstein ? "lambda = " + num(*r.einstein) : std::string("no")) << ", symmetric "
        << (r.symmetric_space ? "yes" : "no") << "\n";
    }
    fj["documents"] = docs;
    list.push_back(fj);
  }
  json j{{"schema", 1}, {"command", "catalog"}, {"families", list}};
  emit(rc, j, h.str());
  return kOk;
}

int cmd_verify(const RunConfig& rc, const std::vector<int>& only, int samples) {
  VerifyOptions o;
  o.tc = rc.tc;
  o.seed = rc.seed;
  o.scan_samples = samples;
  std::vector<int> ids = only;
  if (ids.empty())
    for (int i = 1; i <= static_cast<int>(all_criteria().size()); ++i) ids.push_back(i);
  std::sort(ids.begin(), ids.end());
  bool ok = true;
  json arr = json::array();
  std::ostringstream h, adv;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, o);
    if (r.hard && !r.pass) ok = false;
    json aj = json::array();
    for (const auto& a : r.advisories) {
      aj.push_back({{"name", a.name}, {"match", a.match}, {"max_dev", a.max_dev}, {"note", a.note}});
      adv << "  [" << r.id << "] " << (a.match ? "match   " : "MISMATCH") << "  " << a.name << "  (" << a.note
          << ")\n";
    }
    arr.push_back({{"id", r.id}, {"name", r.name}, {"hard", r.hard}, {"pass", r.pass}, {"max_dev", r.max_dev},
                   {"checked", r.checked}, {"failed", r.failed}, {"failures", r.failures}, {"notes", r.notes},
                   {"advisories", aj}});
    char line[160];
    std::snprintf(line, sizeof line, "%s  %d  %-45s %s  max_dev=%.3e  checked=%d  failed=%d\n",
                  r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.hard ? "hard" : "soft", r.max_dev, r.checked,
                  r.failed);
    h << line;
    for (const auto& f : r.failures) h << "      failed: " << f << "\n";
    for (const auto& n : r.notes) h << "      note: " << n << "\n";
  }
  if (!adv.str().empty()) h << "advisory checks (do not affect the verdict):\n" << adv.str();
  h << (ok ? "all hard criteria pass\n" : "some hard criteria fail\n");
  json j{{"schema", 1}, {"command", "verify-paper"}, {"criteria", arr}, {"all_hard_pass", ok}};
  emit(rc, j, h.str());
  return ok ? kOk : kNegative;
}

int report_error(const RunConfig& rc, const std::string& kind, const std::string& msg,
                 const std::vector<std::string>& candidates, int code) {
  if (rc.json) {
    json j{{"schema", 1}, {"error", {{"kind", kind}, {"message", msg}, {"candidates", candidates}}}};
    std::cout << j.dump(2) << "\n";
  }
  std::cerr << kind << ": " << msg << "\n";
  for (const auto& c : candidates) std::cerr << "  candidate: " << c << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature, SNC test and classification of metric Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  std::string format = "human";
  std::optional<std::uint64_t> seed;
  app.add_option("--tol-struct", rc.tc.tol_struct, "structural tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-eig", rc.tc.tol_eig, "eigenvalue sign guard band")->check(CLI::PositiveNumber);
  app.add_option("--tol-curv", rc.tc.tol_curv, "curvature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed (default: $CURVLIE_SEED, else 0)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"human", "json"}));

  std::string path;
  auto* check = app.add_subcommand("check", "Jacobi, solvability and SNC verdict");
  check->add_option("path", path, "algebra document (JSON)")->required();

  bool scan = false;
  int samples = 10000;
  auto* curv = app.add_subcommand("curvature", "connection, curvature, Einstein and symmetry tests");
  curv->add_option("path", path, "algebra document (JSON)")->required();
  curv->add_flag("--scan", scan, "also search for the largest sectional curvature");
  curv->add_option("--samples", samples, "random planes for --scan")->check(CLI::PositiveNumber);

  auto* canon = app.add_subcommand("canonicalize", "classify an SNC algebra of dimension 4 or 5");
  canon->add_option("path", path, "algebra document (JSON)")->required();

  int dim = 0;
  std::string family;
  std::vector<double> grid;
  auto* cat = app.add_subcommand("catalog", "list catalog families and emit documents");
  cat->add_option("--dim", dim, "4 or 5");
  cat->add_option("--family", family, "family tag, e.g. 5B1");
  cat->add_option("--grid", grid, "parameter values, applied to every parameter")->delimiter(',');

  std::vector<int> only;
  int vsamples = 10000;
  auto* ver = app.add_subcommand("verify-paper", "run the reproduction suite");
  ver->add_option("--criterion", only, "run only these criteria (1-9)")->delimiter(',');
  ver->add_option("--samples", vsamples, "planes per negativity scan")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  rc.json = format == "json";
  try {
    if (seed) {
      rc.seed = *seed;
    } else if (const char* env = std::getenv("CURVLIE_SEED")) {
      try {
        size_t used = 0;
        rc.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw InputError("CURVLIE_SEED must be an unsigned integer");
      }
    }
    if (*check) return cmd_check(rc, path);
    if (*curv) return cmd_curvature(rc, path, scan, samples);
    if (*canon) return cmd_canonicalize(rc, path);
    if (*cat) return cmd_catalog(rc, dim, family, grid);
    if (*ver) return cmd_verify(rc, only, vsamples);
  } catch (const IndeterminateError& e) {
    return report_error(rc, "indeterminate", e.what(), e.candidates(), kIndeterminate);
  } catch (const InputError& e) {
    return report_error(rc, "input error", e.what(), {}, kInput);
  } catch (const PreconditionError& e) {
    return report_error(rc, "precondition error", e.what(), {}, kInput);
  } catch (const InternalError& e) {
    return report_error(rc, "internal error", e.what(), {}, kInput);
  } catch (const ComputationError& e) {
    return report_error(rc, "computation error", e.what(), {}, kInput);
  } catch (const std::exception& e) {
    return report_error(rc, "error", e.what(), {}, kInput);
  }
  return kInput;
}
