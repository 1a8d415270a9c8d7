// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "test_support.hpp"
#include "tourroute/documents.hpp"
#include "tourroute/service.hpp"

namespace tr = tourroute;
using tr::CostMetric;
using tr::EnumerationMode;
using tr::NodeId;
using tr::testing::ids;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void report(int n, const std::string& title, const Check& c, const std::string& detail) {
  std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << n << ". " << title << ": " << (c.ok ? detail : c.why.str())
            << std::endl;
  if (!c.ok) ++failures;
}

std::set<std::vector<std::uint32_t>> id_set(const std::vector<tr::Route>& routes) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& r : routes) out.insert(ids(r));
  return out;
}

void criterion1() {
  Check c;
  const auto& g = tr::testing::brasov();
  auto t0 = std::chrono::steady_clock::now();
  auto r = tr::hamiltonian_paths(g, NodeId{21}, NodeId{22}, CostMetric::Meters);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(r.routes.size() == 8, "expected 8 routes, got " + std::to_string(r.routes.size()));
  if (c.ok) {
    c.require(r.routes.front().cost_meters == 7330, "min " + std::to_string(r.routes.front().cost_meters));
    c.require(r.routes.back().cost_meters == 8570, "max " + std::to_string(r.routes.back().cost_meters));
    c.require(ids(r.routes.front()) == tr::testing::kFullTourListing, "shortest route differs from listing");
  }
  c.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << "8 routes, 7330..8570 m, listing matches, " << secs << " s";
  report(1, "full-tour enumeration", c, d.str());
}

void criterion2() {
  Check c;
  const auto& g = tr::testing::brasov();
  auto r = tr::enumerate_k_paths(g, {NodeId{21}, NodeId{22}, 11, CostMetric::Minutes, EnumerationMode::EnumerateAll});
  c.require(r.routes.size() == 28, "expected 28 routes, got " + std::to_string(r.routes.size()));
  if (c.ok) {
    c.require(r.routes.front().cost_minutes == 52, "min cost " + std::to_string(r.routes.front().cost_minutes));
    c.require(ids(r.routes.front()) == std::vector<std::uint32_t>{21, 4, 18, 17, 5, 14, 15, 11, 12, 13, 22},
              "cheapest route sequence differs");
    c.require(r.routes.back().cost_minutes == 63, "max cost " + std::to_string(r.routes.back().cost_minutes));
    auto sorted = r.routes;
    tr::sort_routes(sorted, CostMetric::Minutes);
    c.require(sorted == r.routes, "output not in (cost, lexicographic) order");
  }
  std::set<std::vector<std::uint32_t>> table;
  for (const auto& row : tr::testing::eleven_stop_rows()) table.insert(row.nodes);
  c.require(id_set(r.routes) == table, "route set differs from the reference table");
  report(2, "eleven-stop enumeration", c, "28 routes, 52..63 min, row set matches");
}

void criterion3() {
  Check c;
  const auto& g = tr::testing::brasov();
  auto r = tr::hamiltonian_paths(g, NodeId{21}, NodeId{22}, CostMetric::Meters);
  tr::Cost lo = ~tr::Cost{0}, hi = 0;
  for (const auto& route : r.routes) {
    auto minutes = tr::route_cost(g, route.nodes, CostMetric::Minutes);
    auto summed = tr::testing::table_sum(ids(route), 3);
    c.require(minutes == summed && route.cost_minutes == summed, "route_cost disagrees with table summation");
    c.require(tr::route_cost(g, route.nodes, CostMetric::Meters) == tr::testing::table_sum(ids(route), 2),
              "meters disagree with table summation");
    lo = std::min(lo, minutes);
    hi = std::max(hi, minutes);
  }
  c.require(r.routes.size() == 8, "expected 8 routes");
  std::ostringstream d;
  d << "minutes recomputed as " << lo << "/" << hi << " (spread " << hi - lo
    << "); reference figures quote 110/127 (spread 17)";
  report(3, "full-tour minutes check", c, d.str());
}

void criteria4and5() {
  Check eq, lb;
  std::mt19937_64 rng(20240601);
  int instances = 0;
  std::size_t compared = 0;
  while (instances < 250) {
    std::uniform_int_distribution<std::size_t> size(2, 9);
    std::uniform_real_distribution<double> density(0.0, 0.6);
    auto g = tr::testing::random_connected_graph(rng, size(rng), density(rng), 50);
    const auto n = static_cast<std::uint32_t>(g.node_count());
    std::uniform_int_distribution<std::uint32_t> pick(1, n);
    NodeId s{pick(rng)}, e{pick(rng)};
    if (s == e) continue;
    std::uniform_int_distribution<std::size_t> kd(2, n);
    auto m = rng() % 2 ? CostMetric::Meters : CostMetric::Minutes;
    tr::QuerySpec q{s, e, kd(rng), m, EnumerationMode::EnumerateAll};
    ++instances;

    auto fast = tr::enumerate_k_paths(g, q);
    auto slow = tr::brute_force_k_paths(g, q);
    eq.require(id_set(fast.routes) == id_set(slow.routes), "route sets differ on instance " + std::to_string(instances));
    eq.require(fast.routes == slow.routes, "sorted listings differ on instance " + std::to_string(instances));
    auto pruned = tr::best_k_path(g, q);
    q.prune = false;
    auto unpruned = tr::best_k_path(g, q);
    eq.require(pruned == unpruned, "pruned and unpruned best differ on instance " + std::to_string(instances));
    ++compared;

    auto sp = tr::shortest_path(g, s, e, m);
    for (std::size_t k = 2; k <= n; ++k) {
      q.k = k;
      q.prune = true;
      if (auto best = tr::best_k_path(g, q)) {
        lb.require(sp && best->cost(m) >= sp->cost(m), "lower bound violated at k=" + std::to_string(k));
      }
    }
  }
  const auto& g = tr::testing::brasov();
  for (auto m : {CostMetric::Meters, CostMetric::Minutes}) {
    for (std::uint32_t s = 1; s <= 22; ++s) {
      for (std::uint32_t e = 1; e <= 22; ++e) {
        if (s == e) continue;
        auto sp = tr::shortest_path(g, NodeId{s}, NodeId{e}, m);
        for (std::size_t k = 2; k <= 22; ++k) {
          auto best = tr::best_k_path(g, {NodeId{s}, NodeId{e}, k, m, EnumerationMode::BestOnly});
          if (best) lb.require(sp && best->cost(m) >= sp->cost(m), "fixture lower bound violated");
        }
      }
    }
    auto sp = tr::shortest_path(g, NodeId{21}, NodeId{22}, m);
    for (std::size_t k = 2; k <= 22; ++k) {
      auto best = tr::best_k_path(g, {NodeId{21}, NodeId{22}, k, m, EnumerationMode::BestOnly});
      if (best) lb.require(sp && best->cost(m) >= sp->cost(m), "fixture lower bound violated for 21->22");
    }
  }
  report(4, "oracle equivalence", eq, std::to_string(compared) + " random instances agree");
  report(5, "lower bound", lb, "holds on " + std::to_string(instances) + " random instances and the fixture");
}

void criterion6() {
  Check c;
  const auto& g = tr::testing::brasov();
  for (auto m : {CostMetric::Meters, CostMetric::Minutes}) {
    auto d = tr::all_pairs_shortest(g, m);
    for (std::uint32_t i = 1; i <= 22; ++i) {
      c.require(d.at(NodeId{i}, NodeId{i}) == tr::Cost{0}, "nonzero diagonal");
      for (std::uint32_t j = 1; j <= 22; ++j) {
        auto ij = d.at(NodeId{i}, NodeId{j});
        c.require(ij.has_value() && ij == d.at(NodeId{j}, NodeId{i}), "asymmetric or missing entry");
        auto sp = tr::shortest_path(g, NodeId{i}, NodeId{j}, m);
        c.require(sp && ij && sp->cost(m) == *ij, "matrix differs from shortest_path");
        for (std::uint32_t l = 1; l <= 22; ++l) {
          auto il = d.at(NodeId{i}, NodeId{l});
          auto lj = d.at(NodeId{l}, NodeId{j});
          c.require(ij && il && lj && *ij <= *il + *lj, "triangle inequality violated");
        }
      }
    }
  }
  report(6, "baseline consistency", c, "symmetric, zero diagonal, triangle-consistent, equals per-pair search");
}

void criterion7() {
  Check c;
  const auto& g = tr::testing::brasov();
  auto make = [](std::string id) {
    return tr::GroupRequest{std::move(id), 10,
                            {NodeId{21}, NodeId{22}, 11, CostMetric::Minutes, EnumerationMode::EnumerateAll},
                            tr::Slack::parse("0.25")};
  };
  std::vector<tr::GroupRequest> reqs{make("g1"), make("g2")};
  auto first = tr::assign_groups(g, reqs, {});
  c.require(first.assignments.size() == 2, "expected two assignments");
  if (c.ok) {
    for (const auto& a : first.assignments) c.require(a.route.cost_minutes <= 65, "route exceeds 65 min");
    c.require(first.assignments[0].route != first.assignments[1].route, "groups share a route");
  }
  auto text = tr::plan_document(g, first).dump();
  for (int i = 0; i < 5; ++i) {
    c.require(tr::plan_document(g, tr::assign_groups(g, reqs, {})).dump() == text, "plan differs between runs");
  }
  std::ostringstream d;
  if (first.assignments.size() == 2) {
    d << "costs " << first.assignments[0].route.cost_minutes << " and " << first.assignments[1].route.cost_minutes
      << " min, distinct, stable across runs";
  }
  report(7, "dispatch determinism and slack", c, d.str());
}

class RunningService {
 public:
  RunningService(tr::ServiceOptions options) : service_(tr::testing::brasov(), std::move(options)) {
    service_.mount(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~RunningService() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }
  bool bound() const { return port_ > 0; }

 private:
  tr::Service service_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

void criterion8() {
  Check c;
  auto log = std::filesystem::temp_directory_path() / ("acceptance-ledger-" + std::to_string(::getpid()));
  std::filesystem::remove(log);
  tr::ServiceOptions options;
  options.ledger_path = log;
  std::string before;
  constexpr int kConcurrent = 64;
  std::uint64_t base = 0, after = 0;
  {
    RunningService s(options);
    c.require(s.bound(), "could not bind");
    auto client = s.client();
    std::mt19937 rng(8);
    for (int i = 0; i < 50; ++i) {
      tr::json ev{{"node", 1 + rng() % 22}, {"delta", static_cast<int>(rng() % 9) - 3}};
      auto res = client.Post("/occupancy", ev.dump(), "application/json");
      c.require(res && res->status == 200, "occupancy POST failed");
    }
    auto res = client.Get("/occupancy");
    c.require(res && res->status == 200, "occupancy GET failed");
    if (res) before = res->body;
  }
  {
    RunningService s(options);
    auto res = s.client().Get("/occupancy");
    c.require(res && res->body == before, "snapshot differs after restart");
    if (res) base = tr::json::parse(res->body)["counts"]["7"].get<std::uint64_t>();
    std::atomic<int> rejected{0};
    std::vector<std::thread> threads;
    for (int i = 0; i < kConcurrent; ++i) {
      threads.emplace_back([&] {
        auto res = s.client().Post("/occupancy", R"({"node": 7, "delta": 1})", "application/json");
        if (!res || res->status != 200) ++rejected;
      });
    }
    for (auto& t : threads) t.join();
    res = s.client().Get("/occupancy");
    if (res) after = tr::json::parse(res->body)["counts"]["7"].get<std::uint64_t>();
    c.require(rejected == 0, std::to_string(rejected.load()) + " concurrent requests failed");
    c.require(after == base + kConcurrent,
              "expected +" + std::to_string(kConcurrent) + ", got +" + std::to_string(after - base));
  }
  std::filesystem::remove(log);
  report(8, "service round trip", c,
         "50 events replayed across restart, " + std::to_string(kConcurrent) + " concurrent deltas counted");
}

}  // namespace

int main() {
  auto guard = [](int n, auto fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::cout << "[FAIL] " << n << ". exception: " << e.what() << std::endl;
      ++failures;
    }
  };
  guard(1, criterion1);
  guard(2, criterion2);
  guard(3, criterion3);
  guard(4, criteria4and5);
  guard(6, criterion6);
  guard(7, criterion7);
  guard(8, criterion8);
  std::cout << (failures ? "acceptance: FAILED" : "acceptance: all criteria pass") << std::endl;
  return failures ? 1 : 0;
}
