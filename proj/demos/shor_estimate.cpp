// Runtime and area for factoring an n-bit number, expected profile.
#include <cstdio>
#include <cstdlib>

#include "qla/shor.hpp"

int main(int argc, char** argv) {
  const std::int64_t bits = argc > 1 ? std::atoll(argv[1]) : 1024;
  const qla::TechnologyParams t;
  const auto tile = qla::steane_tile(2);
  const auto e = qla::estimate_shor(bits, qla::calibrated_timing(t, tile), t, tile);
  std::printf("bits            %lld%s\n", static_cast<long long>(bits), e.interpolated ? " (interpolated)" : "");
  std::printf("logical qubits  %lld\n", static_cast<long long>(e.model.logical_qubits));
  std::printf("toffoli gates   %lld\n", static_cast<long long>(e.model.toffoli_count));
  std::printf("L2 ecc latency  %.4f s\n", e.t2_ecc_s);
  std::printf("runtime         %.2f days\n", e.days());
  std::printf("area            %.3f m^2\n", e.area_m2);
  std::printf("feasible at L2  %s\n", e.feasible_at_level2 ? "yes" : "no");
}
