#include "gcodes/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "gcodes/io.hpp"

namespace gcodes {

bool bound_satisfied(std::uint64_t q, std::size_t n, std::size_t t) {
  const std::uint64_t c = binomial(n, t);
  return c != 0 && q >= c;
}

std::vector<Instance> expand(const SweepConfig& config) {
  std::vector<Instance> out;
  for (auto q : config.q_list) {
    for (std::size_t n = config.n_range.lo; n <= config.n_range.hi; ++n) {
      for (std::size_t k = std::max<std::size_t>(config.k_range.lo, 1); k <= std::min(config.k_range.hi, n); ++k) {
        for (std::size_t t = std::max<std::size_t>(config.t_range.lo, 1); t <= std::min(config.t_range.hi, k); ++t) {
          out.push_back({q, n, k, t});
        }
      }
    }
  }
  return out;
}

void validate(const SweepConfig& config) {
  const auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (config.q_list.empty()) bad("no field orders given");
  for (auto q : config.q_list) {
    if (q > kMaxFieldOrder || !prime_power(q)) bad(std::to_string(q) + " is not a supported prime power");
  }
  for (const auto* r : {&config.n_range, &config.k_range, &config.t_range}) {
    if (r->lo > r->hi) bad("empty range");
  }
  if (config.n_range.lo == 0) bad("n must be at least 1");
  if (config.n_range.hi > 24) bad("n above 24 is not supported");
  if (config.caps.max_vertices == 0 || config.caps.max_pairs == 0) bad("caps must be positive");
  if (config.workers == 0) bad("need at least one worker");
  if (config.resume && config.out.empty()) bad("--resume needs --out");
  if (config.resume && config.format != OutputFormat::Json) bad("--resume works with JSON output only");
  if (expand(config).empty()) bad("no instance with 1 <= t <= k <= n in the grid (the class C_t(n,k) needs t <= k)");
}

bool GraphReport::complete() const {
  return class_size && connected && isometric && diameter_gamma && (diameter_delta || connected == false);
}

bool GraphReport::violation() const {
  if (!bound_satisfied) return false;
  if (connected == false || isometric == false) return true;
  return diameter_delta && diameter_gamma && *diameter_delta != *diameter_gamma;
}

GraphReport run_instance(const Instance& inst, const SweepConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  GraphReport r;
  r.q = inst.q;
  r.n = inst.n;
  r.k = inst.k;
  r.t = inst.t;
  r.bound_satisfied = bound_satisfied(inst.q, inst.n, inst.t);
  const auto finish = [&] {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  };
  const FieldCtx& f = field_of_order(inst.q);
  if (subspace_count(inst.n, inst.k, inst.q) > BigInt(config.caps.max_vertices)) {
    r.caps_hit.emplace_back("max_vertices");
    return finish();
  }
  auto index = std::make_shared<const SubspaceIndex>(f, inst.n, inst.k, config.caps.max_vertices);

  if (config.diameter) {
    // Γ(n, k) is vertex-transitive, so one eccentricity is the diameter.
    const auto gamma = GrassmannGraph::full(index, {.adjacency_cache_limit = 0});
    std::size_t ecc = 0;
    for (auto d : bfs_distances(gamma, 0)) ecc = std::max<std::size_t>(ecc, d);
    r.diameter_gamma = ecc;
  }

  const auto delta = GrassmannGraph::delta(index, inst.t, {.adjacency_cache_limit = config.caps.adjacency_cache_limit});
  const std::uint64_t v = delta.vertex_count();
  r.class_size = v;
  const std::uint64_t pairs = v < 2 ? 0 : v * (v - 1) / 2;
  if ((config.isometry || config.diameter) && pairs <= config.caps.max_pairs) {
    const AllPairsReport all = analyze_all_pairs(delta, kReportWitnessLimit);
    r.connected = all.diameter.connected;
    r.component_count = all.diameter.component_count;
    if (config.diameter && all.diameter.connected) r.diameter_delta = all.diameter.diameter;
    if (config.isometry) {
      r.isometric = all.isometry.isometric;
      for (const auto& w : all.isometry.witnesses) {
        r.witnesses.push_back({format_rref_line(delta.vertex(w.x)), format_rref_line(delta.vertex(w.y)),
                               w.graph_distance == kInfinite ? std::nullopt : std::optional(w.graph_distance),
                               w.grassmann_distance});
      }
    }
  } else {
    if (config.isometry || config.diameter) r.caps_hit.emplace_back("max_pairs");
    if (config.connectivity) {
      const DiameterReport c = connectivity(delta);
      r.connected = c.connected;
      r.component_count = c.component_count;
    }
  }
  if (!config.connectivity && !config.isometry && !config.diameter) r.connected.reset();
  return finish();
}

namespace {

template <typename T>
nlohmann::ordered_json opt(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const nlohmann::json& j) {
  return j.is_null() ? std::nullopt : std::optional<T>(j.get<T>());
}

template <typename T>
std::string csv_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) {
    return *v ? "true" : "false";
  } else {
    return std::to_string(*v);
  }
}

}  // namespace

nlohmann::ordered_json to_json(const GraphReport& r) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["n"] = r.n;
  j["k"] = r.k;
  j["t"] = r.t;
  j["bound_satisfied"] = r.bound_satisfied;
  j["class_size"] = opt(r.class_size);
  j["connected"] = opt(r.connected);
  j["component_count"] = opt(r.component_count);
  j["diameter_delta"] = opt(r.diameter_delta);
  j["diameter_gamma"] = opt(r.diameter_gamma);
  j["isometric"] = opt(r.isometric);
  auto witnesses = nlohmann::ordered_json::array();
  for (const auto& w : r.witnesses) {
    nlohmann::ordered_json e;
    e["x"] = w.x;
    e["y"] = w.y;
    e["graph_distance"] = opt(w.graph_distance);
    e["grassmann_distance"] = w.grassmann_distance;
    witnesses.push_back(std::move(e));
  }
  j["witnesses"] = std::move(witnesses);
  j["caps_hit"] = r.caps_hit;
  j["wall_ms"] = static_cast<double>(static_cast<std::int64_t>(r.wall_ms * 1000.0)) / 1000.0;
  return j;
}

GraphReport report_from_json(const nlohmann::json& j) {
  GraphReport r;
  r.q = j.at("q").get<std::uint64_t>();
  r.n = j.at("n").get<std::size_t>();
  r.k = j.at("k").get<std::size_t>();
  r.t = j.at("t").get<std::size_t>();
  r.bound_satisfied = j.at("bound_satisfied").get<bool>();
  r.class_size = opt_from<std::uint64_t>(j.at("class_size"));
  r.connected = opt_from<bool>(j.at("connected"));
  r.component_count = opt_from<std::size_t>(j.at("component_count"));
  r.diameter_delta = opt_from<std::size_t>(j.at("diameter_delta"));
  r.diameter_gamma = opt_from<std::size_t>(j.at("diameter_gamma"));
  r.isometric = opt_from<bool>(j.at("isometric"));
  for (const auto& w : j.at("witnesses")) {
    r.witnesses.push_back({w.at("x").get<std::string>(), w.at("y").get<std::string>(),
                           opt_from<std::size_t>(w.at("graph_distance")), w.at("grassmann_distance").get<std::size_t>()});
  }
  r.caps_hit = j.at("caps_hit").get<std::vector<std::string>>();
  r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

std::string csv_header() {
  return "q,n,k,t,bound_satisfied,class_size,connected,component_count,diameter_delta,diameter_gamma,isometric,"
         "witnesses,caps_hit,wall_ms";
}

std::string to_csv(const GraphReport& r) {
  std::string caps;
  for (const auto& c : r.caps_hit) caps += (caps.empty() ? "" : ";") + c;
  return std::to_string(r.q) + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.t) +
         "," + (r.bound_satisfied ? "true" : "false") + "," + csv_opt(r.class_size) + "," + csv_opt(r.connected) +
         "," + csv_opt(r.component_count) + "," + csv_opt(r.diameter_delta) + "," + csv_opt(r.diameter_gamma) + "," +
         csv_opt(r.isometric) + "," + std::to_string(r.witnesses.size()) + "," + caps + "," +
         to_json(r)["wall_ms"].dump();
}

void run_sweep(const SweepConfig& config, const std::vector<Instance>& skip,
               const std::function<void(const GraphReport&)>& emit) {
  std::vector<Instance> todo;
  for (const auto& inst : expand(config)) {
    if (std::find(skip.begin(), skip.end(), inst) == skip.end()) todo.push_back(inst);
  }
  std::vector<std::optional<GraphReport>> done(todo.size());
  std::mutex mu;
  std::condition_variable ready;
  std::size_t next = 0;
  const auto work = [&] {
    while (true) {
      std::size_t i = 0;
      {
        std::lock_guard lock(mu);
        if (next == todo.size()) return;
        i = next++;
      }
      GraphReport r;
      try {
        r = run_instance(todo[i], config);
      } catch (const Error& e) {
        r.q = todo[i].q;
        r.n = todo[i].n;
        r.k = todo[i].k;
        r.t = todo[i].t;
        r.bound_satisfied = bound_satisfied(r.q, r.n, r.t);
        r.caps_hit.emplace_back(std::string(to_string(e.code())));
      }
      {
        std::lock_guard lock(mu);
        done[i] = std::move(r);
      }
      ready.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  const std::size_t workers = std::min(config.workers, std::max<std::size_t>(todo.size(), 1));
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    GraphReport r;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return done[i].has_value(); });
      r = std::move(*done[i]);
      done[i].reset();
    }
    emit(r);
  }
}

int sweep_exit_code(const std::vector<GraphReport>& reports) {
  bool capped = false;
  for (const auto& r : reports) {
    if (r.violation()) return 2;
    if (r.bound_satisfied && !r.complete()) capped = true;
  }
  return capped ? 3 : 0;
}

}  // namespace gcodes
