#include "plcert/form.hpp"

#include <deque>
#include <mutex>

namespace plcert::form {

const std::vector<Exponents>& monomials(int n) {
  static std::mutex mu;
  static std::deque<std::vector<Exponents>> cache;
  if (n < 0) throw std::invalid_argument("form::monomials: negative degree");
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= static_cast<std::size_t>(n)) {
    const int d = static_cast<int>(cache.size());
    std::vector<Exponents> list;
    list.reserve(num_monomials(d));
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) list.push_back({a, b, d - a - b});
    cache.push_back(std::move(list));
  }
  return cache[n];
}

}  // namespace plcert::form
