#include <cstdio>
#include "mcs/leader.hpp"
int main() {
  const mcs::Scenario s(50.0, {mcs::MuProfile(20.0, 1.0, 0.0, mcs::DemandDistribution::uniform(0.0, 25.0))}, 1);
  std::printf("%.9f\n", mcs::compute_se(s).p_star[0]);
}
