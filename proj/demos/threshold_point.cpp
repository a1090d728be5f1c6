// Logical failure of levels 1 and 2 at a single component error rate.
#include <cstdio>
#include <cstdlib>

#include "qla/stabsim/threshold.hpp"

int main(int argc, char** argv) {
  const double p = argc > 1 ? std::atof(argv[1]) : 2e-3;
  const std::uint64_t trials = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2000;
  const qla::TechnologyParams t;
  const auto noise = qla::NoiseModel::component(p, t);
  const qla::steane::ProtocolConfig cfg;
  for (int level : {1, 2}) {
    const auto pt = qla::run_point(level, p, noise, t, cfg, trials, 0, 0, qla::default_threads());
    std::printf("level %d  p=%.2e  failures %llu/%llu  rate %.3e +- %.1e\n", level, p,
                static_cast<unsigned long long>(pt.failures), static_cast<unsigned long long>(pt.trials), pt.rate(),
                pt.stderr_());
  }
}
