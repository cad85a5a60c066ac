#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace kyc {

struct WorkItem {
  std::string id;
  long tokens = 1;
  double cost = 0.0;  // FLOPs proxy
};

enum class CostMode { linear, quadratic };

// linear: tokens. quadratic: tokens + tokens^2 / ctx, an attention-aware
// proxy. Throws ConfigError for quadratic mode with ctx == 0.
double estimate_cost(long tokens, CostMode mode, long ctx = 0);

struct GroupAssignment {
  int groups = 0;
  std::unordered_map<std::string, int> assignment;  // item id -> group index
  std::vector<double> loads;                         // per-group cost totals

  double makespan() const;
};

// LPT: items by descending cost (ties by ascending id), each into the group
// with the lowest current load (ties to the lowest index). Makespan is within
// (4/3 - 1/(3m)) of optimal.
GroupAssignment balance_greedy(const std::vector<WorkItem>& items, int groups);

struct PackPlan {
  struct Bin {
    std::vector<std::string> ids;
    long fill = 0;
  };
  std::vector<Bin> bins;
  long capacity = 0;
};

// First-fit-decreasing by token count (ties by ascending id). Throws
// DataError naming the first item whose tokens exceed the capacity.
PackPlan pack_ffd(const std::vector<WorkItem>& items, long capacity);

nlohmann::ordered_json to_json(const PackPlan& plan);
nlohmann::ordered_json to_json(const GroupAssignment& assignment);

}  // namespace kyc
