#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qla/ecc.hpp"
#include "qla/interconnect.hpp"
#include "qla/layout.hpp"
#include "qla/params.hpp"
#include "qla/rng.hpp"

namespace qla {

struct IslandCoord {
  int row = 0;
  int col = 0;
  bool operator==(const IslandCoord&) const = default;
  auto operator<=>(const IslandCoord&) const = default;
};

struct DirectedEdge {
  IslandCoord from;
  IslandCoord to;
  int length_cells = 0;
};

// Islands sit on a grid: one row per tile row, columns every spacing_x cells.
// Each neighbouring pair has one edge per direction with `bandwidth` lanes.
class ChannelGraph {
 public:
  ChannelGraph(const TileLayout& layout, int bandwidth = 2) : layout_(layout), bandwidth_(bandwidth) {
    if (bandwidth < 1) throw ValidationError("bandwidth must be >= 1");
    rows_ = layout.rows;
    cols_ = layout.island_columns();
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        if (c + 1 < cols_) {
          add({r, c}, {r, c + 1}, layout.island_spacing_x);
          add({r, c + 1}, {r, c}, layout.island_spacing_x);
        }
        if (r + 1 < rows_) {
          add({r, c}, {r + 1, c}, layout.pitch_y());
          add({r + 1, c}, {r, c}, layout.pitch_y());
        }
      }
  }

  const TileLayout& layout() const { return layout_; }
  int bandwidth() const { return bandwidth_; }
  int island_rows() const { return rows_; }
  int island_cols() const { return cols_; }
  const std::vector<DirectedEdge>& edges() const { return edges_; }

  IslandCoord port(TileCoord t) const {
    if (!layout_.contains(t)) throw ValidationError("tile off the grid");
    const double cx = t.col * layout_.pitch_x() + layout_.tile.width_cells / 2.0;
    int k = static_cast<int>(std::floor((cx - layout_.island_x(0)) / layout_.island_spacing_x + 0.5));
    k = std::clamp(k, 0, cols_ - 1);
    return {t.row, k};
  }

  int edge_index(IslandCoord a, IslandCoord b) const {
    auto it = index_.find({key(a), key(b)});
    if (it == index_.end()) throw ValidationError("islands are not adjacent");
    return it->second;
  }

  // x-first and y-first Manhattan routes; identical when the route is straight.
  std::vector<std::vector<int>> shortest_routes(IslandCoord a, IslandCoord b) const {
    std::vector<std::vector<int>> out;
    if (a == b) return {{}};
    out.push_back(walk(a, b, true));
    auto y_first = walk(a, b, false);
    if (y_first != out.front()) out.push_back(std::move(y_first));
    return out;
  }

  // Edges are stored in direction pairs.
  static int reverse(int e) { return e ^ 1; }

  int route_cells(const std::vector<int>& route) const {
    int s = 0;
    for (int e : route) s += edges_[e].length_cells;
    return s;
  }

 private:
  int key(IslandCoord c) const { return c.row * cols_ + c.col; }

  void add(IslandCoord a, IslandCoord b, int len) {
    index_[{key(a), key(b)}] = static_cast<int>(edges_.size());
    edges_.push_back({a, b, len});
  }

  std::vector<int> walk(IslandCoord a, IslandCoord b, bool x_first) const {
    std::vector<int> r;
    IslandCoord cur = a;
    auto step_x = [&] {
      while (cur.col != b.col) {
        IslandCoord nx{cur.row, cur.col + (b.col > cur.col ? 1 : -1)};
        r.push_back(edge_index(cur, nx));
        cur = nx;
      }
    };
    auto step_y = [&] {
      while (cur.row != b.row) {
        IslandCoord ny{cur.row + (b.row > cur.row ? 1 : -1), cur.col};
        r.push_back(edge_index(cur, ny));
        cur = ny;
      }
    };
    if (x_first) { step_x(); step_y(); }
    else { step_y(); step_x(); }
    return r;
  }

  TileLayout layout_;
  int bandwidth_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<DirectedEdge> edges_;
  std::map<std::pair<int, int>, int> index_;
};

struct EprRequest {
  TileCoord src;
  TileCoord dst;
  int pairs_needed = 49;
  std::int64_t release = 0;
  std::int64_t deadline = 0;
  int qubit = -1;
  std::vector<std::pair<TileCoord, TileCoord>> alternates;  // (src, dst) tried on back-off
};

struct SchedulerConfig {
  int pairs_per_lane_slot = 25;  // half of a 49-pair level-2 transfer
  int max_retries = 3;
  double slot_us = 0;
  std::int64_t window_slots = 0;
  int swap_slots = 1;
};

// Timestep = one hop of EPR distribution plus its purification, sized for the
// longest route on the grid; the EC window is one level-2 error correction.
inline SchedulerConfig default_scheduler_config(const ChannelGraph& g, const TechnologyParams& t,
                                                const RepeaterParams& rp = {}) {
  const TileLayout& l = g.layout();
  const double longest = (g.island_cols() - 1) * l.island_spacing_x + (g.island_rows() - 1) * l.pitch_y();
  const double hop = std::max<double>(l.island_spacing_x, g.island_rows() > 1 ? l.pitch_y() : 0);
  const RepeaterChannel ch = plan_channel(std::max(longest, hop), hop, t, rp);
  SchedulerConfig c;
  c.slot_us = ch.distribution_us + ch.purification_us;
  const EccTiming timing = calibrated_timing(t, l.tile);
  c.window_slots = static_cast<std::int64_t>(std::floor(ecc_latency_s(2, timing) * 1e6 / c.slot_us));
  c.swap_slots = static_cast<int>(std::ceil(ch.swap_us / c.slot_us - 1e-12));
  if (c.window_slots < 1) throw ValidationError("EC window shorter than one slot");
  return c;
}

struct ScheduledDelivery {
  std::size_t request = 0;
  TileCoord src;
  TileCoord dst;
  std::vector<int> route;
  std::int64_t start = 0;
  std::int64_t occupied = 0;  // slots the route lanes are held
  std::int64_t finish = 0;
  int lanes = 0;
  int retries = 0;
  bool met_deadline = true;
};

struct ScheduleResult {
  std::vector<ScheduledDelivery> deliveries;
  std::map<int, TileCoord> drift_map;
  std::int64_t makespan = 0;
  double utilization = 0;
  std::int64_t occupied_lane_slots = 0;
  std::vector<std::int64_t> edge_busy_slots;  // slots with at least one lane in use
  std::int64_t epr_cells = 0;
  std::int64_t return_trips = 0;
  int bandwidth = 0;
  std::size_t edge_count = 0;
};

class Occupancy {
 public:
  Occupancy(std::size_t edges, int bandwidth) : use_(edges), bandwidth_(bandwidth) {}

  int free_lanes(int e, std::int64_t from, std::int64_t len) const {
    int worst = 0;
    const auto& u = use_[e];
    for (std::int64_t s = from; s < from + len; ++s)
      if (s < static_cast<std::int64_t>(u.size())) worst = std::max<int>(worst, u[s]);
    return bandwidth_ - worst;
  }

  void claim(int e, std::int64_t from, std::int64_t len, int lanes) {
    auto& u = use_[e];
    if (static_cast<std::int64_t>(u.size()) < from + len) u.resize(from + len, 0);
    for (std::int64_t s = from; s < from + len; ++s) u[s] = static_cast<std::uint8_t>(u[s] + lanes);
  }

  std::int64_t busy_slots(int e) const {
    std::int64_t n = 0;
    for (auto v : use_[e]) n += v > 0 ? 1 : 0;
    return n;
  }

  int peak(int e, std::int64_t s) const {
    const auto& u = use_[e];
    return s < static_cast<std::int64_t>(u.size()) ? u[s] : 0;
  }

 private:
  std::vector<std::vector<std::uint8_t>> use_;
  int bandwidth_;
};

class GreedyScheduler {
 public:
  GreedyScheduler(const ChannelGraph& g, SchedulerConfig cfg)
      : g_(g), cfg_(cfg), occ_(g.edges().size(), g.bandwidth()) {
    if (cfg_.pairs_per_lane_slot < 1) throw ValidationError("pairs_per_lane_slot must be >= 1");
    result_.bandwidth = g.bandwidth();
    result_.edge_count = g.edges().size();
  }

  const SchedulerConfig& config() const { return cfg_; }
  const ChannelGraph& graph() const { return g_; }

  std::int64_t duration(int pairs, int lanes) const {
    const std::int64_t per = static_cast<std::int64_t>(lanes) * cfg_.pairs_per_lane_slot;
    return (pairs + per - 1) / per;
  }

  const ScheduledDelivery& submit(const EprRequest& r) {
    if (r.pairs_needed < 1) throw ValidationError("request needs pairs_needed >= 1");
    if (r.deadline < r.release) throw ValidationError("request deadline before release");
    if (r.release < 0) throw ValidationError("negative release time");
    const std::size_t idx = result_.deliveries.size();
    ScheduledDelivery d;
    d.request = idx;
    d.src = r.src;

    std::vector<std::pair<TileCoord, TileCoord>> ends{{r.src, r.dst}};
    for (std::size_t i = 0; i < r.alternates.size() && static_cast<int>(i) < cfg_.max_retries; ++i)
      ends.push_back(r.alternates[i]);

    bool placed = false;
    for (std::size_t attempt = 0; attempt < ends.size() && !placed; ++attempt) {
      const auto routes = g_.shortest_routes(g_.port(ends[attempt].first), g_.port(ends[attempt].second));
      for (std::int64_t t = r.release; t <= r.deadline && !placed; ++t) {
        auto c = best_at(routes, r.pairs_needed, t);
        if (c && c->finish <= r.deadline) {
          commit(d, routes, *c, ends[attempt], static_cast<int>(attempt));
          placed = true;
        }
      }
    }
    if (!placed) {
      const auto routes = g_.shortest_routes(g_.port(r.src), g_.port(r.dst));
      for (std::int64_t t = r.release;; ++t) {
        auto c = best_at(routes, r.pairs_needed, t);
        if (c) {
          commit(d, routes, *c, ends.front(), static_cast<int>(ends.size()) - 1);
          break;
        }
      }
    }
    d.met_deadline = d.finish <= r.deadline;
    result_.epr_cells += static_cast<std::int64_t>(r.pairs_needed) * g_.route_cells(d.route);
    result_.makespan = std::max(result_.makespan, d.finish);
    result_.deliveries.push_back(std::move(d));
    return result_.deliveries.back();
  }

  ScheduleResult& result() { return result_; }

  ScheduleResult finish() {
    ScheduleResult r = result_;
    std::int64_t used = 0;
    for (const auto& d : r.deliveries) used += 2 * static_cast<std::int64_t>(d.route.size()) * d.occupied * d.lanes;
    r.occupied_lane_slots = used;
    r.edge_busy_slots.assign(r.edge_count, 0);
    std::int64_t busy = 0;
    for (std::size_t e = 0; e < r.edge_count; ++e) busy += r.edge_busy_slots[e] = occ_.busy_slots(static_cast<int>(e));
    const double total = static_cast<double>(r.edge_count) * static_cast<double>(r.makespan);
    r.utilization = total > 0 ? busy / total : 0.0;
    return r;
  }

 private:
  struct Candidate {
    std::size_t route = 0;
    std::int64_t start = 0;
    int lanes = 0;
    std::int64_t occupied = 0;
    std::int64_t finish = 0;
  };

  std::optional<Candidate> best_at(const std::vector<std::vector<int>>& routes, int pairs, std::int64_t t) const {
    std::optional<Candidate> best;
    for (std::size_t ri = 0; ri < routes.size(); ++ri) {
      const auto& route = routes[ri];
      if (route.empty()) {
        Candidate c{ri, t, 0, 0, t};
        if (!best || c.finish < best->finish) best = c;
        continue;
      }
      for (int k = g_.bandwidth(); k >= 1; --k) {
        const std::int64_t len = duration(pairs, k);
        bool ok = true;
        for (int e : route)
          if (occ_.free_lanes(e, t, len) < k || occ_.free_lanes(ChannelGraph::reverse(e), t, len) < k) {
            ok = false;
            break;
          }
        if (!ok) continue;
        Candidate c{ri, t, k, len, t + len + swap_slots(route.size())};
        if (!best || c.lanes > best->lanes || (c.lanes == best->lanes && c.finish < best->finish)) best = c;
        break;
      }
    }
    return best;
  }

  std::int64_t swap_slots(std::size_t hops) const {
    if (hops <= 1) return 0;
    return cfg_.swap_slots;
  }

  void commit(ScheduledDelivery& d, const std::vector<std::vector<int>>& routes, const Candidate& c,
              std::pair<TileCoord, TileCoord> ends, int retries) {
    d.route = routes[c.route];
    d.src = ends.first;
    d.dst = ends.second;
    d.lanes = c.lanes;
    d.occupied = c.occupied;
    d.finish = c.finish;
    d.start = c.start;
    d.retries = retries;
    for (int e : d.route) {
      occ_.claim(e, d.start, d.occupied, d.lanes);
      occ_.claim(ChannelGraph::reverse(e), d.start, d.occupied, d.lanes);
    }
  }

  const ChannelGraph& g_;
  SchedulerConfig cfg_;
  Occupancy occ_;
  ScheduleResult result_;
};

// Requests are processed in release order; equal releases keep input order.
inline ScheduleResult schedule(std::vector<EprRequest> requests, const ChannelGraph& g, const SchedulerConfig& cfg) {
  for (const auto& r : requests) {
    if (!g.layout().contains(r.src) || !g.layout().contains(r.dst)) throw ValidationError("request endpoint off the grid");
    for (const auto& [a, b] : r.alternates)
      if (!g.layout().contains(a) || !g.layout().contains(b)) throw ValidationError("alternate endpoint off the grid");
  }
  std::stable_sort(requests.begin(), requests.end(),
                   [](const EprRequest& a, const EprRequest& b) { return a.release < b.release; });
  GreedyScheduler s(g, cfg);
  for (const auto& r : requests) s.submit(r);
  return s.finish();
}

// Rebuilds lane usage from the deliveries; true when no edge direction ever
// carries more than the bandwidth.
inline bool replay_respects_capacity(const ScheduleResult& r, const ChannelGraph& g) {
  std::vector<std::map<std::int64_t, int>> use(g.edges().size());
  for (const auto& d : r.deliveries)
    for (int e : d.route)
      for (int dir : {e, ChannelGraph::reverse(e)})
        for (std::int64_t s = d.start; s < d.start + d.occupied; ++s)
          if ((use[dir][s] += d.lanes) > g.bandwidth()) return false;
  return true;
}

struct UtilizationReport {
  double utilization = 0;
  double hit_rate = 1;
  std::size_t requests = 0;
  std::size_t met = 0;
  std::int64_t makespan = 0;
  std::array<int, 10> edge_histogram{};  // edges binned by busy fraction in tenths
};

inline UtilizationReport utilization_report(const ScheduleResult& r) {
  UtilizationReport u;
  u.utilization = r.utilization;
  u.requests = r.deliveries.size();
  for (const auto& d : r.deliveries) u.met += d.met_deadline ? 1 : 0;
  u.hit_rate = u.requests ? static_cast<double>(u.met) / u.requests : 1.0;
  u.makespan = r.makespan;
  for (std::size_t e = 0; e < r.edge_busy_slots.size(); ++e) {
    const double f = r.makespan > 0 ? static_cast<double>(r.edge_busy_slots[e]) / static_cast<double>(r.makespan) : 0.0;
    u.edge_histogram[std::min(9, static_cast<int>(f * 10))]++;
  }
  return u;
}

// Logical qubit placement for the Toffoli workload.
enum class TileRole { data, factory, free };

struct DriftState {
  std::map<int, TileCoord> position;
  std::map<TileCoord, TileRole> role;
  std::set<TileCoord> occupied;
};

struct GateRecord {
  std::array<int, 3> operands{};  // operands[2] is the target; the gate runs at its tile
  std::int64_t release = 0;
};

struct DriftDecision {
  int qubit = -1;
  TileCoord from;
  TileCoord to;
  bool returned = false;
};

inline std::vector<TileCoord> neighbours(TileCoord t, const TileLayout& l) {
  std::vector<TileCoord> out;
  const std::array<std::pair<int, int>, 4> d{{{0, -1}, {0, 1}, {-1, 0}, {1, 0}}};
  for (auto [dr, dc] : d) {
    TileCoord n{t.row + dr, t.col + dc};
    if (l.contains(n)) out.push_back(n);
  }
  return out;
}

inline std::vector<TileCoord> free_neighbours(TileCoord site, const DriftState& st, const TileLayout& l) {
  std::vector<TileCoord> out;
  for (auto n : neighbours(site, l)) {
    auto it = st.role.find(n);
    if (it != st.role.end() && it->second != TileRole::factory && !st.occupied.count(n)) out.push_back(n);
  }
  return out;
}

// After operand `q` teleported to the gate site it settles on a free tile
// beside the site. It goes back when no tile is free or a later request
// names its old tile.
inline DriftDecision apply_drift(DriftState& st, const TileLayout& l, int q, TileCoord site,
                                 std::span<const EprRequest> later = {}) {
  DriftDecision dd;
  dd.qubit = q;
  dd.from = st.position.at(q);
  dd.to = dd.from;
  bool pinned = false;
  for (const auto& r : later)
    if (r.src == dd.from || r.dst == dd.from) pinned = true;
  const auto spots = free_neighbours(site, st, l);
  if (pinned || spots.empty() || dd.from == site) {
    dd.returned = dd.from != site;
    return dd;
  }
  TileCoord best = spots.front();
  for (auto s : spots)
    if (manhattan_distance(s, dd.from, l) < manhattan_distance(best, dd.from, l)) best = s;
  if (manhattan_distance(dd.from, site, l) <= manhattan_distance(best, site, l)) return dd;
  st.occupied.erase(dd.from);
  st.occupied.insert(best);
  st.position[q] = best;
  dd.to = best;
  return dd;
}

struct ToffoliWorkload {
  DriftState initial;
  std::vector<GateRecord> gates;
  std::vector<TileCoord> factories;
};

// Tiles cycle data, data, factory, free along each row, shifted per row.
// A gate is released on its issue slot, or later if an operand is still in
// the previous gate's window.
inline ToffoliWorkload make_toffoli_workload(const TileLayout& l, int gates, std::int64_t interval_slots,
                                             std::int64_t window_slots, std::uint64_t seed) {
  if (gates < 0) throw ValidationError("gate count must be >= 0");
  if (interval_slots < 0) throw ValidationError("gate interval must be >= 0");
  ToffoliWorkload w;
  int next_q = 0;
  for (int r = 0; r < l.rows; ++r)
    for (int c = 0; c < l.cols; ++c) {
      TileCoord t{r, c};
      const int m = (c + 2 * r) % 4;
      TileRole role = m < 2 ? TileRole::data : (m == 2 ? TileRole::factory : TileRole::free);
      w.initial.role[t] = role;
      if (role == TileRole::data) {
        w.initial.position[next_q++] = t;
        w.initial.occupied.insert(t);
      } else if (role == TileRole::factory) {
        w.factories.push_back(t);
      }
    }
  if (next_q < 3) throw ValidationError("grid too small for a Toffoli workload");
  Rng rng(derive_seed(seed, 0x746f66));
  std::vector<std::int64_t> busy(static_cast<std::size_t>(next_q), 0);
  for (int i = 0; i < gates; ++i) {
    GateRecord g;
    std::set<int> used;
    for (int k = 0; k < 3; ++k) {
      int q;
      do q = static_cast<int>(rng.below(static_cast<std::uint64_t>(next_q)));
      while (used.count(q));
      used.insert(q);
      g.operands[k] = q;
    }
    g.release = static_cast<std::int64_t>(i) * interval_slots;
    for (int q : g.operands) g.release = std::max(g.release, busy[q]);
    for (int q : g.operands) busy[q] = g.release + window_slots;
    w.gates.push_back(g);
  }
  return w;
}

// Closest by island hops first, then by tile distance.
inline std::vector<TileCoord> nearest_factories(TileCoord site, const std::vector<TileCoord>& f, const ChannelGraph& g,
                                                std::size_t n) {
  const TileLayout& l = g.layout();
  const IslandCoord p = g.port(site);
  auto hops = [&](TileCoord t) {
    const IslandCoord q = g.port(t);
    return std::abs(q.row - p.row) + std::abs(q.col - p.col);
  };
  std::vector<TileCoord> v = f;
  std::stable_sort(v.begin(), v.end(), [&](TileCoord a, TileCoord b) {
    const int ha = hops(a), hb = hops(b);
    if (ha != hb) return ha < hb;
    return manhattan_distance(a, site, l) < manhattan_distance(b, site, l);
  });
  if (v.size() > n) v.resize(n);
  return v;
}

struct ToffoliOptions {
  bool drift = true;
  int pairs_per_transfer = 49;
  int ancilla_per_gate = 6;
};

// Each Toffoli takes nine deliveries at the target's tile: two operands, the
// target itself (local) and six ancillae from the nearest factories.
inline ScheduleResult schedule_toffoli(const ToffoliWorkload& w, const ChannelGraph& g, const SchedulerConfig& cfg,
                                       const ToffoliOptions& opt = {}) {
  const TileLayout& l = g.layout();
  GreedyScheduler s(g, cfg);
  DriftState st = w.initial;
  std::vector<EprRequest> returns;
  auto flush_returns = [&](std::int64_t upto) {
    std::stable_sort(returns.begin(), returns.end(),
                     [](const EprRequest& a, const EprRequest& b) { return a.release < b.release; });
    std::size_t k = 0;
    for (; k < returns.size() && returns[k].release <= upto; ++k) s.submit(returns[k]);
    returns.erase(returns.begin(), returns.begin() + static_cast<std::ptrdiff_t>(k));
  };
  std::vector<GateRecord> gates = w.gates;
  std::stable_sort(gates.begin(), gates.end(),
                   [](const GateRecord& a, const GateRecord& b) { return a.release < b.release; });
  for (const auto& gate : gates) {
    flush_returns(gate.release);
    const TileCoord site = st.position.at(gate.operands[2]);
    const std::int64_t deadline = gate.release + cfg.window_slots;
    for (int k = 0; k < 3; ++k) {
      const int q = gate.operands[k];
      EprRequest r;
      r.src = st.position.at(q);
      r.dst = site;
      r.pairs_needed = opt.pairs_per_transfer;
      r.release = gate.release;
      r.deadline = deadline;
      r.qubit = q;
      if (k < 2)
        for (auto n : free_neighbours(site, st, l)) r.alternates.push_back({r.src, n});
      s.submit(r);
    }
    const auto fs = nearest_factories(site, w.factories, g, w.factories.size());
    const std::size_t n_anc = std::min(fs.size(), static_cast<std::size_t>(opt.ancilla_per_gate));
    for (std::size_t i = 0; i < n_anc; ++i) {
      EprRequest r;
      r.src = fs[i];
      for (std::size_t j = n_anc; j < fs.size() && r.alternates.size() < 3; ++j) r.alternates.push_back({fs[j], site});
      r.dst = site;
      r.pairs_needed = opt.pairs_per_transfer;
      r.release = gate.release;
      r.deadline = deadline;
      s.submit(r);
    }
    for (int k = 0; k < 2; ++k) {
      const int q = gate.operands[k];
      const TileCoord home = st.position.at(q);
      if (home == site || g.port(home) == g.port(site)) continue;
      bool back = true;
      if (opt.drift) back = apply_drift(st, l, q, site).returned;
      if (back) {
        EprRequest r;
        r.src = site;
        r.dst = home;
        r.pairs_needed = opt.pairs_per_transfer;
        r.release = deadline;
        r.deadline = deadline + cfg.window_slots;
        r.qubit = q;
        returns.push_back(r);
        s.result().return_trips++;
      }
    }
  }
  flush_returns(std::numeric_limits<std::int64_t>::max());
  ScheduleResult out = s.finish();
  out.drift_map = st.position;
  return out;
}

// Line records: src_row src_col dst_row dst_col pairs release; '#' starts a comment.
inline std::vector<EprRequest> parse_workload(std::string_view text, std::int64_t window_slots) {
  std::vector<EprRequest> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<long long> v;
    long long x;
    while (ls >> x) v.push_back(x);
    if (v.empty()) {
      if (!ls.eof()) throw ValidationError("workload line " + std::to_string(lineno) + ": not an integer");
      continue;
    }
    if (!ls.eof() || v.size() != 6)
      throw ValidationError("workload line " + std::to_string(lineno) + ": expected 6 integers");
    if (v[4] < 1) throw ValidationError("workload line " + std::to_string(lineno) + ": pairs must be >= 1");
    if (v[5] < 0) throw ValidationError("workload line " + std::to_string(lineno) + ": negative release");
    EprRequest r;
    r.src = {static_cast<int>(v[0]), static_cast<int>(v[1])};
    r.dst = {static_cast<int>(v[2]), static_cast<int>(v[3])};
    r.pairs_needed = static_cast<int>(v[4]);
    r.release = v[5];
    r.deadline = v[5] + window_slots;
    out.push_back(r);
  }
  return out;
}

// Every directed edge gets a long transfer between the tiles at its two ends,
// all released at slot 0.
inline std::vector<EprRequest> saturating_workload(const ChannelGraph& g, int pairs, std::int64_t window_slots) {
  const TileLayout& l = g.layout();
  std::map<IslandCoord, TileCoord> tile_at;
  for (int r = 0; r < l.rows; ++r)
    for (int c = 0; c < l.cols; ++c) tile_at.try_emplace(g.port({r, c}), TileCoord{r, c});
  std::vector<EprRequest> out;
  for (const auto& e : g.edges()) {
    auto a = tile_at.find(e.from);
    auto b = tile_at.find(e.to);
    if (a == tile_at.end() || b == tile_at.end()) continue;
    EprRequest r;
    r.src = a->second;
    r.dst = b->second;
    r.pairs_needed = pairs;
    r.release = 0;
    r.deadline = window_slots;
    out.push_back(r);
  }
  return out;
}

}  // namespace qla
