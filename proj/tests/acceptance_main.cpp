#include <bfree/acceptance.hpp>
#include <iostream>

int main() {
  std::cout << "running the self-check suite (14 criteria)\n";
  std::vector<bfree::criterion_result> rs = bfree::run_acceptance_suite(&std::cout);
  int fails = 0;
  for (const auto& r : rs) fails += !r.pass;
  if (fails == 0)
    std::cout << "all 14 criteria pass\n";
  else
    std::cout << fails << " of " << rs.size() << " criteria failing\n";
  return fails == 0 ? 0 : 1;
}
