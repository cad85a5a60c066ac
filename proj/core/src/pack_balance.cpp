#include "kyc/pack_balance.hpp"

#include <algorithm>
#include <cmath>

#include "kyc/errors.hpp"

namespace kyc {

double estimate_cost(long tokens, CostMode mode, long ctx) {
  if (tokens < 1) throw DataError("token count must be >= 1");
  if (mode == CostMode::linear) return static_cast<double>(tokens);
  if (ctx == 0) throw ConfigError("quadratic cost mode requires a context length");
  double t = static_cast<double>(tokens);
  return t + t * t / static_cast<double>(ctx);
}

double GroupAssignment::makespan() const {
  double m = 0.0;
  for (double load : loads) m = std::max(m, load);
  return m;
}

namespace {

std::vector<size_t> order_by_descending(const std::vector<WorkItem>& items, bool by_cost) {
  std::vector<size_t> order(items.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (by_cost) {
      if (items[a].cost != items[b].cost) return items[a].cost > items[b].cost;
    } else {
      if (items[a].tokens != items[b].tokens) return items[a].tokens > items[b].tokens;
    }
    return items[a].id < items[b].id;
  });
  return order;
}

}  // namespace

GroupAssignment balance_greedy(const std::vector<WorkItem>& items, int groups) {
  if (groups < 1) throw ConfigError("group count must be >= 1");
  for (const WorkItem& item : items) {
    if (!std::isfinite(item.cost) || item.cost < 0.0) {
      throw DataError("item '" + item.id + "' has a non-finite or negative cost");
    }
  }

  GroupAssignment result;
  result.groups = groups;
  result.loads.assign(static_cast<size_t>(groups), 0.0);

  for (size_t idx : order_by_descending(items, /*by_cost=*/true)) {
    int best = 0;
    for (int g = 1; g < groups; ++g) {
      if (result.loads[g] < result.loads[best]) best = g;
    }
    result.assignment[items[idx].id] = best;
    result.loads[best] += items[idx].cost;
  }
  return result;
}

PackPlan pack_ffd(const std::vector<WorkItem>& items, long capacity) {
  if (capacity < 1) throw ConfigError("capacity must be >= 1");

  PackPlan plan;
  plan.capacity = capacity;
  for (size_t idx : order_by_descending(items, /*by_cost=*/false)) {
    const WorkItem& item = items[idx];
    if (item.tokens < 1) throw DataError("item '" + item.id + "' has token count < 1");
    if (item.tokens > capacity) {
      throw DataError("item '" + item.id + "' (" + std::to_string(item.tokens) +
                      " tokens) exceeds bin capacity " + std::to_string(capacity));
    }
    bool placed = false;
    for (PackPlan::Bin& bin : plan.bins) {
      if (bin.fill + item.tokens <= capacity) {
        bin.ids.push_back(item.id);
        bin.fill += item.tokens;
        placed = true;
        break;
      }
    }
    if (!placed) {
      plan.bins.push_back({{item.id}, item.tokens});
    }
  }
  return plan;
}

nlohmann::ordered_json to_json(const PackPlan& plan) {
  nlohmann::ordered_json j;
  j["capacity"] = plan.capacity;
  j["bins"] = nlohmann::ordered_json::array();
  for (const PackPlan::Bin& bin : plan.bins) {
    j["bins"].push_back({{"ids", bin.ids}, {"fill", bin.fill}});
  }
  return j;
}

nlohmann::ordered_json to_json(const GroupAssignment& assignment) {
  nlohmann::ordered_json j;
  j["groups"] = assignment.groups;
  // Sort ids for stable output.
  std::vector<std::string> ids;
  ids.reserve(assignment.assignment.size());
  for (const auto& [id, _] : assignment.assignment) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  j["assignment"] = nlohmann::ordered_json::object();
  for (const std::string& id : ids) j["assignment"][id] = assignment.assignment.at(id);
  j["loads"] = assignment.loads;
  return j;
}

}  // namespace kyc
