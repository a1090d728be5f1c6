// Connection plan for each island spacing over one distance.
#include <cstdio>
#include <cstdlib>

#include "qla/interconnect.hpp"

int main(int argc, char** argv) {
  const double d = argc > 1 ? std::atof(argv[1]) : 6000;
  const qla::TechnologyParams t;
  std::printf("%8s %6s %7s %6s %10s %12s\n", "spacing", "hops", "rounds", "swaps", "fidelity", "time_us");
  for (double s : qla::default_spacings()) {
    if (s > d) continue;
    try {
      const auto ch = qla::plan_channel(d, s, t);
      std::printf("%8.0f %6d %7d %6d %10.7f %12.1f\n", s, ch.hop_count, ch.purification_rounds_per_hop, ch.swap_stages,
                  ch.final_fidelity, ch.time_us());
    } catch (const qla::UnreachableFidelity&) {
      std::printf("%8.0f  unreachable\n", s);
    }
  }
  std::printf("optimal spacing %.0f cells\n", qla::optimal_spacing(d, qla::default_spacings(), t));
}
