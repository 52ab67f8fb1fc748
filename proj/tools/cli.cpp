#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "torsionlab/catalog.hpp"
#include "torsionlab/classifiers.hpp"
#include "torsionlab/existence.hpp"
#include "torsionlab/obstruction.hpp"
#include "torsionlab/verification.hpp"

namespace tl::cli {
namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Outcome {
  Json report;
  int code = kOk;
};

struct Options {
  std::string command;
  std::string algebra, f, v, hyperplane_map, job, family, group, target, structure, format;
  std::optional<long> type, p, n;
  std::uint64_t seed = 20240607;
  bool with_bases = false;
  bool timing = false;
};

std::size_t max_n() {
  const char* env = std::getenv("TORSIONLAB_MAX_N");
  if (!env || !*env) return 12;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 1) throw InputError("TORSIONLAB_MAX_N must be a positive integer");
  return static_cast<std::size_t>(value);
}

void check_n(std::size_t n) {
  if (n > max_n())
    throw InputError("ambient dimension " + std::to_string(n) + " exceeds TORSIONLAB_MAX_N = " +
                     std::to_string(max_n()));
}

// ---------- JSON <-> exact types ----------

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const Mat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

// Basis of a subspace of End(R^k) as matrices, or of R^k as vectors.
Json basis_json(const Subspace& s, std::size_t side) {
  Json a = Json::array();
  for (const auto& b : s.basis()) {
    if (side && side * side == s.ambient_dim())
      a.push_back(to_json(Mat::from_flat(side, side, b)));
    else
      a.push_back(to_json(b));
  }
  return a;
}

Rational rational_from(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError("bad rational \"" + j.get<std::string>() + "\": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("rationals must be strings \"p/q\" or integers, got " + j.dump());
}

Vec vec_from(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
  Vec v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

Mat mat_from(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("expected a nonempty array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(vec_from(r));
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw InputError("matrix rows differ in length");
  return Mat::from_rows(rows, cols);
}

Json read_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

// A flag value is a file path if such a file exists, inline JSON otherwise.
Json load(const std::string& arg, const std::string& what) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_json_text(ss.str(), what + " file " + arg);
  }
  return read_json_text(arg, what);
}

Vec parse_vector(const std::string& arg) {
  if (!arg.empty() && arg.front() == '[') return vec_from(read_json_text(arg, "--v"));
  Vec v;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ','))
    v.push_back(rational_from(Json(item)));
  if (v.empty()) throw InputError("--v is empty");
  return v;
}

// ---------- algebra input ----------

LinearSubalgebra algebra_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("algebra spec must be a JSON object");
  if (j.contains("builder")) {
    BuildSpec spec;
    spec.name = j.at("builder").get<std::string>();
    if (j.contains("params")) {
      for (const auto& [key, value] : j.at("params").items()) {
        if (!value.is_number_integer()) throw InputError("builder parameter " + key + " must be an integer");
        spec.params[key] = value.get<long>();
      }
    }
    if (j.contains("gram")) spec.gram = mat_from(j.at("gram"));
    return build(spec);
  }
  if (!j.contains("basis")) throw InputError("algebra spec needs \"builder\" or \"basis\"");
  std::vector<Mat> basis;
  for (const auto& b : j.at("basis")) basis.push_back(mat_from(b));
  std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : 0;
  if (n == 0) {
    if (basis.empty()) throw InputError("empty basis needs an explicit \"n\"");
    n = basis.front().rows();
  }
  Structures s;
  auto opt_mat = [&](const char* key) -> std::optional<Mat> {
    if (!j.contains(key)) return std::nullopt;
    return mat_from(j.at(key));
  };
  s.J = opt_mat("J");
  s.g = opt_mat("g");
  s.omega = opt_mat("omega");
  s.product = opt_mat("product");
  s.tangent = opt_mat("tangent");
  const std::string name = j.contains("name") ? j.at("name").get<std::string>() : "custom";
  return LinearSubalgebra(n, basis, name, s);
}

LinearSubalgebra resolve_algebra(const std::string& arg, const std::optional<Json>& job) {
  LinearSubalgebra h;
  if (arg.empty()) {
    if (!job || !job->contains("algebra")) throw InputError("--algebra is required");
    h = algebra_from_json(job->at("algebra"));
  } else if (std::filesystem::is_regular_file(arg) || arg.front() == '{') {
    h = algebra_from_json(load(arg, "--algebra"));
  } else {
    bool found = false;
    for (auto& e : standard_catalog()) {
      if (e.label == arg) {
        h = e.algebra;
        found = true;
        break;
      }
    }
    if (!found) {
      auto spec = parse_shorthand(arg);
      if (!spec) throw InputError("cannot parse algebra name " + arg);
      h = build(*spec);
    }
  }
  check_n(h.n());
  return h;
}

std::optional<Mat> resolve_matrix(const std::string& arg, const std::optional<Json>& job, const char* key,
                                  const char* flag) {
  if (!arg.empty()) return mat_from(load(arg, flag));
  if (job && job->contains(key)) return mat_from(job->at(key));
  return std::nullopt;
}

Mat random_f(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
  Mat f(n - 1, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) f(i, j) = make_rational(num(rng), den(rng));
  return f;
}

AlmostAbelian resolve_f(const Options& o, const std::optional<Json>& job, bool allow_random, Json& inputs) {
  auto f = resolve_matrix(o.f, job, "f", "--f");
  if (!f) {
    if (!allow_random || !o.n) throw InputError("--f is required");
    if (*o.n < 2) throw InputError("--n must be at least 2");
    f = random_f(static_cast<std::size_t>(*o.n), o.seed);
    inputs["random_f_seed"] = o.seed;
  }
  if (!f->square()) throw InputError("f must be square");
  check_n(f->rows() + 1);
  inputs["f"] = to_json(*f);
  return AlmostAbelian(*f);
}

std::optional<Vec> resolve_v(const Options& o, const std::optional<Json>& job, std::size_t n) {
  std::optional<Vec> v;
  if (!o.v.empty())
    v = parse_vector(o.v);
  else if (job && job->contains("options") && job->at("options").contains("v"))
    v = vec_from(job->at("options").at("v"));
  if (v && v->size() != n) throw InputError("--v must have length n = " + std::to_string(n));
  return v;
}

Json algebra_echo(const LinearSubalgebra& h) {
  Json a;
  a["name"] = h.name();
  a["n"] = h.n();
  a["dim"] = h.dim();
  return a;
}

// ---------- certificates ----------

Json certificate_json(const Certificate& c) {
  Json j;
  j["kind"] = c.kind == CertificateKind::flat ? "flat" : "torsion_free";
  j["valid"] = c.valid();
  j["torsion_nonzero"] = c.torsion_nonzero;
  if (c.kind == CertificateKind::flat) j["curvature_nonzero"] = c.curvature_nonzero;
  j["n"] = c.nabla.n;
  // Sparse Γ: entries [i, j, k, value] with ∇_{e_i} e_j = Σ_k value e_k.
  Json gamma = Json::array();
  const std::size_t n = c.nabla.n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = 0; jj < n; ++jj)
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(c.nabla.at(i, jj, k)) != 0) gamma.push_back(Json::array({i, jj, k, to_json(c.nabla.at(i, jj, k))}));
  j["gamma"] = gamma;
  return j;
}

Outcome certificate_outcome(const CertificateResult& res, Json report) {
  if (const auto* c = std::get_if<Certificate>(&res)) {
    const bool ok = c->valid();
    report["result"] = ok ? "certificate" : "invalid_certificate";
    report["certificate"] = certificate_json(*c);
    // An invalid certificate is an internal invariant violation.
    return {report, ok ? kOk : kInternalError};
  }
  const auto& r = std::get<Refusal>(res);
  report["result"] = "refusal";
  report["reason"] = r.reason;
  report["residual"] = to_json(r.residual);
  return {report, kNegative};
}

// ---------- commands ----------

Outcome cmd_space(const Options& o, const std::optional<Json>& job) {
  const auto h = resolve_algebra(o.algebra, job);
  const auto v = resolve_v(o, job, h.n());
  Json report;
  report["command"] = "space";
  report["inputs"]["algebra"] = algebra_echo(h);
  if (v) report["inputs"]["v"] = to_json(*v);

  const auto r = obstruction_report(h, v);
  const std::size_t m = h.n() - 1;
  Json dims;
  dims["k_tilde"] = r.k_tilde.dim();
  dims["tableau"] = r.tableau.dim();
  dims["K1"] = r.K1.dim();
  dims["D"] = r.D.dim();
  dims["F"] = r.F.dim();
  report["dims"] = dims;

  RuleContext ctx = RuleContext::from(h);
  if (v) ctx.v = v;
  Json rules = Json::array();
  for (const auto& rule : evaluate_rules(h, ctx)) {
    Json e;
    e["rule"] = rule.rule;
    e["applies"] = rule.applies;
    if (!rule.note.empty()) e["note"] = rule.note;
    if (rule.F) {
      e["dim"] = rule.F->dim();
      e["matches_engine"] = (*rule.F == r.F);
    }
    rules.push_back(e);
  }
  report["rules"] = rules;

  if (o.with_bases) {
    Json b;
    b["k_tilde"] = basis_json(r.k_tilde, m);
    b["tableau"] = basis_json(r.tableau, 0);
    b["K1"] = basis_json(r.K1, 0);
    b["D"] = basis_json(r.D, 0);
    b["F"] = basis_json(r.F, m);
    report["bases"] = b;
  }
  return {report, kOk};
}

Outcome cmd_check(const Options& o, const std::optional<Json>& job, bool flat) {
  const auto h = resolve_algebra(o.algebra, job);
  Json report;
  report["command"] = flat ? "flat" : "check";
  report["inputs"]["algebra"] = algebra_echo(h);
  const auto g = resolve_f(o, job, false, report["inputs"]);
  if (g.n() != h.n()) throw InputError("f must be (n-1) x (n-1) for the algebra's n");
  const auto hm = resolve_matrix(o.hyperplane_map, job, "hyperplane_map", "--hyperplane-map");
  if (hm) report["inputs"]["hyperplane_map"] = to_json(*hm);
  if (flat) return certificate_outcome(flat_certificate(h, g, hm), report);
  const auto v = resolve_v(o, job, h.n());
  if (v) report["inputs"]["v"] = to_json(*v);
  return certificate_outcome(check_torsion_free(h, g, hm, v), report);
}

Json type_json(const TypeVerdict& t, bool with_bases) {
  Json j;
  j["type"] = t.type;
  j["verdict"] = to_string(t.verdict);
  j["rule"] = t.rule;
  if (with_bases && t.basis) j["basis"] = to_json(*t.basis);
  if (with_bases && t.frame) j["frame"] = to_json(*t.frame);
  return j;
}

int verdict_code(Verdict v) { return v == Verdict::no ? kNegative : kOk; }

HpcStructureData structure_from(const Json& j) {
  if (!j.is_object()) throw InputError("structure must be a JSON object");
  HpcStructureData d;
  const std::string which = j.value("case", std::string("A"));
  if (which.size() != 1) throw InputError("structure case must be \"A\" or \"B\"");
  d.which = which.front();
  d.A = j.contains("A") ? mat_from(j.at("A")) : Mat();
  d.a = rational_from(j.at("a"));
  d.w1 = vec_from(j.at("w1"));
  d.w2 = vec_from(j.at("w2"));
  if (j.contains("lambda")) d.lambda = rational_from(j.at("lambda"));
  if (j.contains("mu")) d.mu = rational_from(j.at("mu"));
  return d;
}

Outcome cmd_exists(const Options& o, const std::optional<Json>& job) {
  Json report;
  report["command"] = "exists";
  std::string family = o.family;
  if (family.empty() && job && job->contains("family")) family = job->at("family").get<std::string>();

  if (family == "hpc-flat") {
    report["inputs"]["family"] = family;
    if (o.structure.empty()) throw InputError("--structure is required for hpc-flat");
    const auto d = structure_from(load(o.structure, "--structure"));
    check_n(2 * d.w1.size() + 2);
    const auto r = hpc_flatness(d);
    report["verdict"] = r.flat ? "flat" : "non_flat";
    if (r.witness) report["witness"] = to_json(*r.witness);
    report["reason"] = r.reason;
    return {report, r.flat ? kOk : kNegative};
  }

  if (family.empty()) {
    // Literal membership for an arbitrary algebra.
    const auto h = resolve_algebra(o.algebra, job);
    report["inputs"]["algebra"] = algebra_echo(h);
    const auto g = resolve_f(o, job, true, report["inputs"]);
    const auto r = admits_torsion_free(h, g);
    report["verdict"] = to_string(r.verdict);
    Json types = Json::array();
    for (const auto& t : r.per_type) types.push_back(type_json(t, o.with_bases));
    report["per_type"] = types;
    return {report, verdict_code(r.verdict)};
  }

  report["inputs"]["family"] = family;
  std::map<std::string, long> params;
  if (o.p) {
    params["p"] = *o.p;
    report["inputs"]["p"] = *o.p;
  }
  const auto g = resolve_f(o, job, true, report["inputs"]);
  const auto r = admits_torsion_free(family, g, params);

  std::vector<TypeVerdict> shown = r.per_type;
  Verdict verdict = r.verdict;
  if (o.type) {
    report["inputs"]["type"] = *o.type;
    const std::string want = "[U" + std::to_string(*o.type) + "]";
    shown.clear();
    for (const auto& t : r.per_type)
      if (t.type.ends_with(want)) shown.push_back(t);
    if (shown.empty()) throw InputError("family " + family + " has no type " + want);
    verdict = shown.front().verdict;
  }
  report["verdict"] = to_string(verdict);
  Json types = Json::array();
  for (const auto& t : shown) types.push_back(type_json(t, o.with_bases));
  report["per_type"] = types;
  return {report, verdict_code(verdict)};
}

Outcome cmd_classify_hpc(const Options& o, const std::optional<Json>& job) {
  Json report;
  report["command"] = "classify-hpc";
  const auto g = resolve_f(o, job, true, report["inputs"]);
  const auto c = classify_hyperparacomplex(g);
  report["verdict"] = to_string(c.verdict);
  report["rule"] = c.rule;
  if (c.structure) {
    Json s;
    s["case"] = std::string(1, c.structure->which);
    s["A"] = to_json(c.structure->A);
    s["a"] = to_json(c.structure->a);
    s["w1"] = to_json(c.structure->w1);
    s["w2"] = to_json(c.structure->w2);
    s["lambda"] = to_json(c.structure->lambda);
    s["mu"] = to_json(c.structure->mu);
    const auto fl = hpc_flatness(*c.structure);
    s["flat"] = fl.flat;
    report["structure"] = s;
  }
  report["caseB_available"] = c.basis_caseB.has_value();
  if (o.with_bases) {
    if (c.basis) report["basis"] = to_json(*c.basis);
    if (c.basis_caseB) report["basis_caseB"] = to_json(*c.basis_caseB);
  }
  int code = kOk;
  if (c.verdict == HpcVerdict::no) code = kNegative;
  return {report, code};
}

Outcome cmd_orbits(const Options& o) {
  if (o.group.empty()) throw InputError("--group is required");
  if (!o.n) throw InputError("--n is required");
  if (*o.n < 2) throw InputError("--n must be at least 2");
  const auto n = static_cast<std::size_t>(*o.n);
  check_n(n);
  const auto c = orbit_catalog(o.group, n, o.p ? static_cast<std::size_t>(*o.p) : 0);
  Json report;
  report["command"] = "orbits";
  report["inputs"]["group"] = o.group;
  report["inputs"]["n"] = n;
  if (o.p) report["inputs"]["p"] = *o.p;
  report["algebra"] = algebra_echo(c.h);
  Json reps = Json::array();
  for (const auto& r : c.reps) {
    Json j;
    j["label"] = r.label;
    j["invariants"] = r.invariants;
    if (o.with_bases) {
      j["U"] = basis_json(r.U, 0);
      j["T"] = to_json(r.T);
    }
    reps.push_back(j);
  }
  report["representatives"] = reps;
  return {report, kOk};
}

Outcome cmd_catalog() {
  Json report;
  report["command"] = "catalog";
  Json entries = Json::array();
  for (const auto& e : standard_catalog()) {
    Json j;
    j["label"] = e.label;
    j["name"] = e.algebra.name();
    j["n"] = e.algebra.n();
    j["dim"] = e.algebra.dim();
    entries.push_back(j);
  }
  report["algebras"] = entries;
  report["builders"] = builder_names();
  report["groups"] = orbit_groups();
  return {report, kOk};
}

std::string check_line(const CheckResult& r, bool timing) {
  if (timing) return format_line(r);
  return std::string(r.pass ? "PASS" : "FAIL") + "  criterion " + std::to_string(r.criterion) + " (" + r.name +
         "): " + r.detail;
}

Outcome cmd_verify(const Options& o, std::ostream& out, bool text) {
  VerificationOptions vo;
  if (!o.target.empty()) vo.target = o.target;
  vo.seed = o.seed;
  const auto results = run_verification_suite(vo);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  Json report;
  report["command"] = "verify-paper";
  report["inputs"]["seed"] = o.seed;
  if (vo.target) report["inputs"]["target"] = *vo.target;
  if (text) {
    for (const auto& r : results) out << check_line(r, o.timing) << '\n';
    out << (all ? "ALL PASS" : "FAILURES") << '\n';
    return {Json(), all ? kOk : kNegative};
  }
  Json arr = Json::array();
  for (const auto& r : results) {
    Json j;
    j["criterion"] = r.criterion;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    if (o.timing) j["seconds"] = r.seconds;
    arr.push_back(j);
  }
  report["results"] = arr;
  report["pass"] = all;
  return {report, all ? kOk : kNegative};
}

// ---------- rendering ----------

// Like dump(2), but arrays of scalars stay on one line so matrices read as rows.
void write_json(const Json& j, std::ostream& out, int indent = 0) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  auto scalar_array = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << pad << Json(key).dump() << ": ";
      write_json(value, out, indent + 2);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << close << '}';
  } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      write_json(j[i], out, indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << close << ']';
  } else {
    out << j.dump(-1, ' ', false);
  }
}

void render_text(const Json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      render_text(value, out, prefix.empty() ? key : prefix + "." + key);
    }
  } else if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], out, prefix + "[" + std::to_string(i) + "]");
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

Outcome dispatch(const Options& o, std::ostream& out, bool text) {
  std::optional<Json> job;
  if (!o.job.empty()) job = load(o.job, "--job");
  if (o.command == "space") return cmd_space(o, job);
  if (o.command == "check") return cmd_check(o, job, false);
  if (o.command == "flat") return cmd_check(o, job, true);
  if (o.command == "exists") return cmd_exists(o, job);
  if (o.command == "classify-hpc") return cmd_classify_hpc(o, job);
  if (o.command == "orbits") return cmd_orbits(o);
  if (o.command == "catalog") return cmd_catalog();
  if (o.command == "verify-paper") return cmd_verify(o, out, text);
  throw InputError("unknown command " + o.command);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact obstruction spaces and torsion-free connections on almost Abelian Lie algebras",
               "torsionlab"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--job", o.job, "JSON job file: {algebra, f, hyperplane_map, options: {v}}");
    sub->add_flag("--timing", o.timing, "include wall-clock runtime (output no longer byte-stable)");
  };
  auto add_algebra = [&](CLI::App* sub) {
    sub->add_option("--algebra", o.algebra, "catalog label, builder shorthand, JSON file or inline JSON");
  };
  auto add_f = [&](CLI::App* sub) { sub->add_option("--f", o.f, "f as JSON matrix (file or inline)"); };

  auto* space = app.add_subcommand("space", "dims and bases of k~, tableau, K^(1), D, F");
  add_common(space);
  add_algebra(space);
  space->add_option("--v", o.v, "transversal vector, JSON array or comma list");
  space->add_flag("--with-bases", o.with_bases, "include bases");

  auto* check = app.add_subcommand("check", "torsion-free certificate or refusal");
  add_common(check);
  add_algebra(check);
  add_f(check);
  check->add_option("--v", o.v, "transversal vector");
  check->add_option("--hyperplane-map", o.hyperplane_map, "n x n matrix sending the hyperplane to R^{n-1}");

  auto* flat = app.add_subcommand("flat", "flat certificate or refusal");
  add_common(flat);
  add_algebra(flat);
  add_f(flat);
  flat->add_option("--hyperplane-map", o.hyperplane_map, "n x n matrix sending the hyperplane to R^{n-1}");

  auto* exists = app.add_subcommand("exists", "existence of torsion-free structures");
  add_common(exists);
  add_algebra(exists);
  add_f(exists);
  exists->add_option("--family", o.family, "product, tangent, gl_C, u, hpc or hpc-flat");
  exists->add_option("--p", o.p, "signature p for product structures");
  exists->add_option("--type", o.type, "restrict to orbit type [U_k]");
  exists->add_option("--n", o.n, "ambient dimension for a seeded random f");
  exists->add_option("--seed", o.seed, "seed for the random f");
  exists->add_option("--structure", o.structure, "hyperparacomplex structure data (hpc-flat)");
  exists->add_flag("--with-bases", o.with_bases, "include adapted bases and frames");

  auto* hpc = app.add_subcommand("classify-hpc", "hyperparacomplex classification of g_f");
  add_common(hpc);
  add_f(hpc);
  hpc->add_option("--n", o.n, "ambient dimension for a seeded random f");
  hpc->add_option("--seed", o.seed, "seed for the random f");
  hpc->add_flag("--with-bases", o.with_bases, "include bases");

  auto* orbits = app.add_subcommand("orbits", "hyperplane orbit representatives");
  add_common(orbits);
  orbits->add_option("--group", o.group, "GL(P0), GL(T0), GL(m,C), SL(m,C), Sp(2k,C), U(m), SU(m), GL(k,H)");
  orbits->add_option("--n", o.n, "ambient dimension");
  orbits->add_option("--p", o.p, "signature p for GL(P0)");
  orbits->add_flag("--with-bases", o.with_bases, "include U and T");

  auto* catalog = app.add_subcommand("catalog", "list catalog algebras, builders and groups");
  add_common(catalog);

  auto* verify = app.add_subcommand("verify-paper", "run the acceptance suite");
  add_common(verify);
  verify->add_option("--target", o.target, "restrict the catalog sweeps to one algebra");
  verify->add_option("--seed", o.seed, "seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  o.command = app.get_subcommands().front()->get_name();

  const bool text = o.format.empty() ? o.command == "verify-paper" : o.format == "text";
  try {
    const auto start = std::chrono::steady_clock::now();
    Outcome res = dispatch(o, out, text);
    if (!res.report.is_null()) {
      if (o.timing)
        res.report["runtime_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (text)
        render_text(res.report, out);
      else
      {
        write_json(res.report, out);
        out << '\n';
      }
    }
    return res.code;
  } catch (const std::invalid_argument& e) {
    // Covers schema errors and every domain precondition failure in the library.
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace tl::cli
