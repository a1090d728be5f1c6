// Toffoli traffic on an 8x8 grid with and without operand drift.
#include <cstdio>

#include "qla/scheduler.hpp"

int main() {
  const qla::TechnologyParams t;
  const auto l = qla::build_layout(8, 8, qla::steane_tile(2), 100);
  for (int bw : {1, 2, 3}) {
    const qla::ChannelGraph g(l, bw);
    const auto cfg = qla::default_scheduler_config(g, t);
    const auto w = qla::make_toffoli_workload(l, 500, 1, cfg.window_slots, 0);
    for (bool drift : {true, false}) {
      qla::ToffoliOptions opt;
      opt.drift = drift;
      const auto r = qla::schedule_toffoli(w, g, cfg, opt);
      const auto u = qla::utilization_report(r);
      std::printf("B=%d drift=%d  hit %.4f  utilization %.3f  makespan %lld slots  epr-cells %lld\n", bw, drift,
                  u.hit_rate, u.utilization, static_cast<long long>(u.makespan), static_cast<long long>(r.epr_cells));
    }
  }
}
