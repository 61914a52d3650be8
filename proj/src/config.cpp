#include "hbspace/config.hpp"

namespace hbspace {

std::vector<std::pair<std::string_view, double*>> Tolerances::named() {
  return {{"root", &root},   {"gcd", &gcd},     {"cluster", &cluster}, {"pos", &pos},
          {"fr", &fr},       {"pair", &pair},   {"plus", &plus},       {"iso", &iso},
          {"quad", &quad},   {"ker", &ker},     {"orth", &orth},       {"null", &null},
          {"angle", &angle}, {"limit", &limit}, {"ystar", &ystar}};
}

std::vector<std::pair<std::string_view, double>> Tolerances::named() const {
  std::vector<std::pair<std::string_view, double>> out;
  for (auto [name, ptr] : const_cast<Tolerances*>(this)->named()) out.emplace_back(name, *ptr);
  return out;
}

}  // namespace hbspace
