// Command-line front end: classify, path, opposite, sweep, enumerate.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "gcodes/construct.hpp"
#include "gcodes/io.hpp"
#include "gcodes/sweep.hpp"

using namespace gcodes;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConstructionFailed = 1;
constexpr int kExitViolation = 2;
constexpr int kExitCapped = 3;
constexpr int kExitInput = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Range parse_range(const std::string& s) {
  Range r;
  std::size_t sep = s.find("..");
  std::size_t skip = 2;
  if (sep == std::string::npos) {
    sep = s.find('-');
    skip = 1;
  }
  try {
    std::size_t used = 0;
    if (sep == std::string::npos) {
      r.lo = r.hi = std::stoul(s, &used);
      if (used != s.size()) throw InputError("");
    } else {
      const std::string a = s.substr(0, sep);
      const std::string b = s.substr(sep + skip);
      r.lo = std::stoul(a, &used);
      if (used != a.size()) throw InputError("");
      r.hi = std::stoul(b, &used);
      if (used != b.size()) throw InputError("");
    }
  } catch (const std::exception&) {
    throw InputError("bad range '" + s + "' (use N or A..B)");
  }
  return r;
}

ordered_json dist_json(std::size_t v) { return v == kInfinite ? ordered_json(nullptr) : ordered_json(v); }

ordered_json rows_json(const Subspace& s) {
  auto rows = ordered_json::array();
  for (std::size_t r = 0; r < s.dim(); ++r) rows.push_back(s.basis().row_vector(r));
  return rows;
}

ordered_json map_json(const MonomialMap& m) {
  ordered_json j;
  j["perm"] = m.perm();
  j["scalars"] = m.scalars();
  return j;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void check_q(const LinearCode& c, std::uint64_t q) {
  if (q != 0 && c.field().q() != q) {
    throw Error(ErrorCode::FieldMismatch,
                "file is over GF(" + std::to_string(c.field().q()) + ") but --q is " + std::to_string(q));
  }
}

int cmd_classify(const std::string& file, std::uint64_t q, const std::string& out) {
  const LinearCode c = read_generator_file(file);
  check_q(c, q);
  ordered_json j;
  j["q"] = c.field().q();
  j["n"] = c.n();
  j["k"] = c.k();
  int status = kExitOk;
  try {
    const std::size_t dual_d = c.dual_min_distance();
    const MinDistance d = min_distance(c);
    j["t_max"] = c.t_max();
    j["dual_distance"] = dist_json(dual_d);
    j["min_distance"] = dist_json(d.value);
    j["mds"] = c.k() > 0 && d.value == c.n() - c.k() + 1;
    j["nondegenerate"] = dual_d == kInfinite || dual_d >= 2;
    j["projective"] = dual_d == kInfinite || dual_d >= 3;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLargeExact) throw;
    j["error"] = e.what();
    status = kExitCapped;
  }
  Output o(out);
  o.stream() << j.dump(2) << "\n";
  return status;
}

int cmd_path(const std::string& fx, const std::string& fy, std::size_t t, const std::string& out) {
  const LinearCode x = read_generator_file(fx);
  const LinearCode y = read_generator_file(fy);
  if (&x.field() != &y.field()) throw Error(ErrorCode::FieldMismatch, "the two codes are over different fields");
  if (x.n() != y.n() || x.k() != y.k()) throw Error(ErrorCode::DimensionMismatch, "codes differ in n or k");
  for (const auto* c : {&x, &y}) {
    if (t < 1 || t > c->k() || !is_in_ct(*c, t)) throw Error(ErrorCode::NotInCt, "input code not in C_" + std::to_string(t));
  }
  const std::size_t expected = grassmann_distance(x.space(), y.space());
  const bool bound = bound_satisfied(x.field().q(), x.n(), t);
  ordered_json j;
  j["q"] = x.field().q();
  j["n"] = x.n();
  j["k"] = x.k();
  j["t"] = t;
  j["bound_satisfied"] = bound;
  j["expected_length"] = expected;
  std::vector<LinearCode> codes;
  int status = kExitOk;
  try {
    const GeodesicPath p = geodesic_path(x, y, t);
    codes = p.codes;
    j["ok"] = p.length() == expected;
    j["bound_violations"] = p.stats.bound_violations;
    if (p.length() != expected) status = kExitViolation;
  } catch (const PathFailedError& e) {
    codes = e.partial();
    j["ok"] = false;
    j["error"] = e.what();
    status = bound ? kExitViolation : kExitConstructionFailed;
  }
  j["length"] = codes.size() - 1;
  auto path = ordered_json::array();
  for (const auto& c : codes) path.push_back(rows_json(c.space()));
  j["path"] = std::move(path);
  auto edges = ordered_json::array();
  for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
    ordered_json e;
    e["dim_meet"] = intersection_dim(codes[i].space(), codes[i + 1].space());
    e["adjacent"] = e["dim_meet"] == x.k() - 1;
    e["next_in_ct"] = is_in_ct(codes[i + 1], t);
    e["dim_meet_y"] = intersection_dim(codes[i + 1].space(), y.space());
    if (!e["adjacent"].get<bool>() || !e["next_in_ct"].get<bool>()) status = kExitViolation;
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);
  Output o(out);
  o.stream() << j.dump(2) << "\n";
  return status;
}

int cmd_opposite(const std::string& file, std::size_t t, const std::string& out) {
  const LinearCode c = read_generator_file(file);
  if (t < 1 || t > c.k() || !is_in_ct(c, t)) throw Error(ErrorCode::NotInCt, "input code not in C_" + std::to_string(t));
  const std::size_t n = c.n();
  const std::size_t k = c.k();
  const bool bound = c.field().q() > std::max(k, n - k) + 1;
  ordered_json j;
  j["q"] = c.field().q();
  j["n"] = n;
  j["k"] = k;
  j["t"] = t;
  j["bound_satisfied"] = bound;
  try {
    const OppositeResult r = opposite_code(c, t);
    const std::size_t meet = intersection_dim(c.space(), r.d.space());
    const std::size_t want = 2 * k > n ? 2 * k - n : 0;
    const bool d_in_ct = is_in_ct(r.d, t);
    const bool equivalent = apply_monomial(r.witness, c) == r.d;
    const bool chain = LinearCode(Subspace::span(r.rho.inverse().apply(r.sigma.apply(r.rho.apply(c.generator()))))) == r.d;
    j["lambda"] = r.lambda;
    j["d"] = rows_json(r.d.space());
    j["d_text"] = format_generator(r.d);
    j["witness"] = map_json(r.witness);
    j["rho"] = map_json(r.rho);
    j["sigma"] = map_json(r.sigma);
    ordered_json checks;
    checks["dim_meet"] = meet;
    checks["expected_dim_meet"] = want;
    checks["d_in_ct"] = d_in_ct;
    checks["equivalent"] = equivalent;
    checks["chain"] = chain;
    checks["t_max_c"] = c.t_max();
    checks["t_max_d"] = r.d.t_max();
    j["checks"] = checks;
    const bool ok = meet == want && d_in_ct && equivalent && chain && c.t_max() == r.d.t_max();
    j["ok"] = ok;
    Output o(out);
    o.stream() << j.dump(2) << "\n";
    return ok ? kExitOk : kExitViolation;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoLambda) throw;
    j["ok"] = false;
    j["error"] = e.what();
    Output o(out);
    o.stream() << j.dump(2) << "\n";
    return bound ? kExitViolation : kExitConstructionFailed;
  }
}

int cmd_enumerate(std::uint64_t q, std::size_t n, std::size_t k, std::size_t t, std::uint64_t max_vertices,
                  const std::string& out) {
  if (q == 0 || n == 0) throw InputError("enumerate needs --q, --n, --k and --t");
  if (t < 1 || t > k || k > n) throw InputError("need 1 <= t <= k <= n");
  const FieldCtx& f = field_of_order(q);
  auto index = std::make_shared<const SubspaceIndex>(f, n, k, max_vertices);
  const auto g = GrassmannGraph::delta(index, t, {.adjacency_cache_limit = 0});
  Output o(out);
  std::ostream& s = o.stream();
  s << q << " " << n << " " << k << "\n";
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) s << format_rref_line(g.vertex(v)) << "\n";
  (out.empty() ? std::cerr : std::cout) << g.vertex_count() << "\n";
  return kExitOk;
}

int cmd_sweep(SweepConfig config) {
  validate(config);
  std::vector<GraphReport> reports;
  std::vector<Instance> skip;
  if (config.resume && std::filesystem::exists(config.out)) {
    std::ifstream in(config.out);
    std::string line;
    std::string kept;
    while (std::getline(in, line)) {
      try {
        const GraphReport r = report_from_json(nlohmann::json::parse(line));
        skip.push_back({r.q, r.n, r.k, r.t});
        reports.push_back(r);
        kept += line + "\n";
      } catch (const std::exception&) {
        // a torn final line from an interrupted run; it is recomputed
      }
    }
    in.close();
    std::ofstream rewrite(config.out, std::ios::binary | std::ios::trunc);
    rewrite << kept;
  }
  std::ofstream file;
  if (!config.out.empty()) {
    file.open(config.out, std::ios::binary | (config.resume ? std::ios::app : std::ios::trunc));
    if (!file) throw InputError("cannot write " + config.out);
  }
  std::ostream& s = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  if (config.format == OutputFormat::Csv) s << csv_header() << "\n";
  run_sweep(config, skip, [&](const GraphReport& r) {
    if (config.format == OutputFormat::Json) {
      s << to_json(r).dump() << "\n";
    } else {
      s << to_csv(r) << "\n";
    }
    s.flush();
    reports.push_back(r);
  });
  std::size_t violations = 0;
  std::size_t incomplete = 0;
  for (const auto& r : reports) {
    violations += r.violation() ? 1 : 0;
    incomplete += r.bound_satisfied && !r.complete() ? 1 : 0;
  }
  std::cerr << reports.size() << " instances, " << violations << " violations, " << incomplete
            << " bound-satisfied instances not fully verified\n";
  return sweep_exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear codes in the Grassmann graph: classification, geodesics, opposite codes, sweeps"};
  app.require_subcommand(1);

  std::string out;
  std::string format = "json";
  std::string file;
  std::string file_y;
  std::size_t t = 0;
  std::uint64_t q_single = 0;

  auto* classify = app.add_subcommand("classify", "t_max, dual distance and flags of a code");
  classify->add_option("file", file, "generator-matrix file")->required();
  classify->add_option("--q", q_single, "expected field order");
  classify->add_option("--out", out, "write JSON here instead of stdout");

  auto* path = app.add_subcommand("path", "geodesic between two codes inside C_t(n,k)");
  path->add_option("x", file, "generator-matrix file")->required();
  path->add_option("y", file_y, "generator-matrix file")->required();
  path->add_option("--t", t, "t")->required();
  path->add_option("--out", out, "write JSON here instead of stdout");

  auto* opposite = app.add_subcommand("opposite", "equivalent code opposite to the input in Γ(n,k)");
  opposite->add_option("file", file, "generator-matrix file")->required();
  opposite->add_option("--t", t, "t")->required();
  opposite->add_option("--out", out, "write JSON here instead of stdout");

  SweepConfig config;
  std::vector<std::uint64_t> q_list;
  std::string n_range;
  std::string k_range;
  std::string t_range;
  auto* sweep = app.add_subcommand("sweep", "verify connectivity, isometry and diameter over a grid");
  sweep->add_option("--q", q_list, "field orders")->required()->delimiter(',');
  sweep->add_option("--n", n_range, "N or A..B")->required();
  sweep->add_option("--k", k_range, "N or A..B")->required();
  sweep->add_option("--t", t_range, "N or A..B")->required();
  sweep->add_option("--max-vertices", config.caps.max_vertices, "largest |Γ(n,k)| enumerated");
  sweep->add_option("--max-pairs", config.caps.max_pairs, "largest number of vertex pairs of Δ_t checked");
  sweep->add_option("--workers", config.workers, "parallel instances");
  sweep->add_option("--out", out, "output file (default stdout)");
  sweep->add_flag("--resume", config.resume, "skip instances already present in --out");
  sweep->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::uint64_t max_vertices = kDefaultEnumerationCap;
  std::size_t n = 0;
  std::size_t k = 0;
  auto* enumerate = app.add_subcommand("enumerate", "list C_t(n,k) in canonical form");
  enumerate->add_option("--q", q_single, "field order")->required();
  enumerate->add_option("--n", n, "length")->required();
  enumerate->add_option("--k", k, "dimension")->required();
  enumerate->add_option("--t", t, "t")->required();
  enumerate->add_option("--max-vertices", max_vertices, "largest |Γ(n,k)| enumerated");
  enumerate->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*classify) return cmd_classify(file, q_single, out);
    if (*path) return cmd_path(file, file_y, t, out);
    if (*opposite) return cmd_opposite(file, t, out);
    if (*enumerate) return cmd_enumerate(q_single, n, k, t, max_vertices, out);
    config.q_list = q_list;
    config.n_range = parse_range(n_range);
    config.k_range = parse_range(k_range);
    config.t_range = parse_range(t_range);
    config.out = out;
    config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    return cmd_sweep(config);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::EnumerationTooLarge:
      case ErrorCode::TooLargeExact:
        return kExitCapped;
      default:
        return kExitInput;
    }
  }
}
