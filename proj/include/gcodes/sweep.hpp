#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcodes/grassmann.hpp"

namespace gcodes {

struct Caps {
  /// Largest |Γ(n, k)| that is enumerated.
  std::uint64_t max_vertices = kDefaultEnumerationCap;
  /// Largest number of unordered vertex pairs of Δ_t checked for isometry
  /// and diameter.
  std::uint64_t max_pairs = std::uint64_t{8192} * 8191 / 2;
  /// Δ_t graphs up to this many vertices keep explicit adjacency rows.
  std::size_t adjacency_cache_limit = std::size_t{1} << 15;
};

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

struct Instance {
  std::uint64_t q;
  std::size_t n;
  std::size_t k;
  std::size_t t;
  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class OutputFormat { Json, Csv };

struct SweepConfig {
  std::vector<std::uint64_t> q_list;
  Range n_range;
  Range k_range;
  Range t_range;
  Caps caps;
  bool connectivity = true;
  bool isometry = true;
  bool diameter = true;
  std::string out;  // empty: stdout
  std::size_t workers = 1;
  bool resume = false;
  OutputFormat format = OutputFormat::Json;
};

/// Grid points with 1 <= t <= k <= n, in (q, n, k, t) order.
std::vector<Instance> expand(const SweepConfig& config);

/// Throws InvalidArgument for empty ranges, zero caps or workers, field
/// orders that are not prime powers, and grids with no valid instance
/// (for example t > k everywhere).
void validate(const SweepConfig& config);

struct ReportWitness {
  std::string x;  // RREF rows, row-major
  std::string y;
  std::optional<std::size_t> graph_distance;  // nullopt: different components
  std::size_t grassmann_distance;
};

/// Result of verifying one (q, n, k, t). Unknown values stay empty when a
/// cap stopped the computation.
struct GraphReport {
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t t = 0;
  bool bound_satisfied = false;
  std::optional<std::uint64_t> class_size;
  std::optional<bool> connected;
  std::optional<std::size_t> component_count;
  std::optional<std::size_t> diameter_delta;
  std::optional<std::size_t> diameter_gamma;
  std::optional<bool> isometric;
  std::vector<ReportWitness> witnesses;
  std::vector<std::string> caps_hit;
  double wall_ms = 0;

  /// Everything needed for the connectivity, isometry and diameter claims was computed.
  [[nodiscard]] bool complete() const;
  /// Bound satisfied and a computed value contradicts the claims.
  [[nodiscard]] bool violation() const;
};

/// q >= C(n, t).
bool bound_satisfied(std::uint64_t q, std::size_t n, std::size_t t);

inline constexpr std::size_t kReportWitnessLimit = 10;

GraphReport run_instance(const Instance& inst, const SweepConfig& config);

nlohmann::ordered_json to_json(const GraphReport& r);
GraphReport report_from_json(const nlohmann::json& j);
std::string csv_header();
std::string to_csv(const GraphReport& r);

/// Runs every instance on config.workers threads and hands each report to
/// emit in grid order. Instances in `skip` are not run.
void run_sweep(const SweepConfig& config, const std::vector<Instance>& skip,
               const std::function<void(const GraphReport&)>& emit);

/// 0 all verified, 2 a violation on a bound-satisfied instance, 3 a cap
/// prevented verification of a bound-satisfied instance.
int sweep_exit_code(const std::vector<GraphReport>& reports);

}  // namespace gcodes
