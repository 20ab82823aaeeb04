#include "plcert/gf.hpp"

#include <algorithm>
#include <string>

namespace plcert {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Coeffs = std::vector<std::uint64_t>;

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t powmod_int(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// a mod f over F_p, f monic.
Coeffs reduce(Coeffs a, const Coeffs& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      a[shift + i] = (a[shift + i] + p - lead * f[i] % p) % p;
    trim(a);
  }
  return a;
}

Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& f,
              std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return reduce(std::move(r), f, p);
}

Coeffs powmod_poly(Coeffs base, std::uint64_t e, const Coeffs& f,
                   std::uint64_t p) {
  Coeffs r{1};
  base = reduce(std::move(base), f, p);
  while (e) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Coeffs gcd_poly(Coeffs a, Coeffs b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::uint64_t inv = powmod_int(b.back(), p - 2, p);
    for (auto& c : b) c = c * inv % p;
    a = reduce(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin irreducibility test for a monic f of degree k over F_p.
bool rabin_irreducible(const Coeffs& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  // x^{p^i} mod f by repeated p-th powering.
  auto frob_iter = [&](std::size_t n) {
    Coeffs x{0, 1};
    for (std::size_t i = 0; i < n; ++i) x = powmod_poly(x, p, f, p);
    return x;
  };
  Coeffs full = frob_iter(k);
  Coeffs xr = reduce(Coeffs{0, 1}, f, p);
  if (full != xr) return false;
  for (std::uint64_t r : prime_factors(k)) {
    Coeffs h = frob_iter(k / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Coeffs g = gcd_poly(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

Fq Fq::build(std::uint32_t p, unsigned k, std::uint64_t seed) {
  if (!is_prime(p)) throw std::invalid_argument("gf_build: p is not prime");
  if (k == 0) throw std::invalid_argument("gf_build: extension degree must be >= 1");
  if (k == 1) return make(p, {0, 1});
  Rng rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Coeffs f(k + 1);
    for (unsigned i = 0; i < k; ++i) f[i] = draw(rng, p);
    f[k] = 1;
    if (f[0] == 0) continue;
    if (rabin_irreducible(f, p)) {
      std::vector<std::uint32_t> m(f.begin(), f.end());
      return make(p, std::move(m));
    }
  }
  throw std::runtime_error("gf_build: no irreducible modulus found");
}

Fq Fq::from_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("field: p is not prime");
  if (modulus.size() < 2 || modulus.back() != 1)
    throw std::invalid_argument("field: modulus must be monic of degree >= 1");
  for (auto c : modulus)
    if (c >= p) throw std::invalid_argument("field: modulus coefficient out of range");
  if (modulus.size() == 2) {
    if (modulus[0] != 0)
      throw std::invalid_argument("field: prime field modulus must be t");
    return make(p, std::move(modulus));
  }
  Coeffs f(modulus.begin(), modulus.end());
  if (!rabin_irreducible(f, p))
    throw std::invalid_argument("field: modulus is reducible");
  return make(p, std::move(modulus));
}

Fq Fq::make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  auto t = std::make_shared<Tables>();
  t->p = p;
  t->k = static_cast<unsigned>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < t->k; ++i) {
    q *= p;
    if (q > (1ull << 24))
      throw std::invalid_argument("field: order " + std::to_string(q) +
                                  " exceeds table limit 2^24");
  }
  t->q = static_cast<std::uint32_t>(q);
  t->modulus = std::move(modulus);
  if (t->k == 1) {
    t->invtab.assign(p, 0);
    for (std::uint32_t a = 1; a < p; ++a)
      t->invtab[a] = static_cast<std::uint32_t>(powmod_int(a, p - 2, p));
    Fq f;
    f.t_ = std::move(t);
    return f;
  }
  const unsigned k = t->k;
  Coeffs fm(t->modulus.begin(), t->modulus.end());
  auto to_poly = [&](std::uint32_t code) {
    Coeffs c(k, 0);
    for (unsigned i = 0; i < k; ++i) {
      c[i] = code % p;
      code /= p;
    }
    trim(c);
    return c;
  };
  auto to_code = [&](const Coeffs& c) {
    std::uint64_t code = 0, w = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (i < c.size()) code += c[i] * w;
      w *= p;
    }
    return static_cast<std::uint32_t>(code);
  };
  const std::uint64_t qm1 = q - 1;
  const auto qf = prime_factors(qm1);
  std::uint32_t gen = 0;
  for (std::uint32_t cand = 2; cand < q; ++cand) {
    Coeffs c = to_poly(cand);
    bool ok = true;
    for (auto r : qf) {
      if (powmod_poly(c, qm1 / r, fm, p) == Coeffs{1}) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = cand;
      break;
    }
  }
  if (gen == 0) throw std::runtime_error("field: no primitive element found");
  t->exp.assign(2 * qm1, 0);
  t->log.assign(q, 0);
  Coeffs g = to_poly(gen), cur{1};
  for (std::uint64_t i = 0; i < qm1; ++i) {
    std::uint32_t code = to_code(cur);
    t->exp[i] = code;
    t->exp[i + qm1] = code;
    t->log[code] = static_cast<std::uint32_t>(i);
    cur = mulmod(cur, g, fm, p);
  }
  t->negtab.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t x = a, w = 1, r = 0;
    for (unsigned i = 0; i < k; ++i) {
      std::uint32_t d = x % p;
      x /= p;
      r += ((p - d) % p) * w;
      w *= p;
    }
    t->negtab[a] = r;
  }
  // zech[n] = log(1 + g^n); the constant term is digit 0 of the code.
  t->zech.assign(qm1, -1);
  for (std::uint64_t n = 0; n < qm1; ++n) {
    std::uint32_t code = t->exp[n];
    std::uint32_t d0 = code % p;
    std::uint32_t s = code - d0 + (d0 + 1) % p;
    t->zech[n] = s == 0 ? -1 : static_cast<std::int64_t>(t->log[s]);
  }
  t->invtab.assign(q, 0);
  for (std::uint32_t a = 1; a < q; ++a)
    t->invtab[a] = t->exp[(qm1 - t->log[a]) % qm1];
  Fq f;
  f.t_ = std::move(t);
  return f;
}

Fq::Elem Fq::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (t_->k == 1)
    return static_cast<Elem>(powmod_int(a, e, t_->p));
  const std::uint64_t qm1 = t_->q - 1;
  std::uint64_t l = t_->log[a];
  return t_->exp[static_cast<std::uint64_t>((static_cast<unsigned __int128>(l) * (e % qm1)) % qm1)];
}

std::vector<std::uint32_t> Fq::coords(Elem a) const {
  std::vector<std::uint32_t> c(t_->k);
  for (unsigned i = 0; i < t_->k; ++i) {
    c[i] = a % t_->p;
    a /= t_->p;
  }
  return c;
}

Fq::Elem Fq::from_coords(std::span<const std::uint32_t> c) const {
  if (c.size() != t_->k) throw std::invalid_argument("field: coordinate length mismatch");
  std::uint64_t code = 0, w = 1;
  for (unsigned i = 0; i < t_->k; ++i) {
    if (c[i] >= t_->p) throw std::invalid_argument("field: residue out of range");
    code += c[i] * w;
    w *= t_->p;
  }
  return static_cast<Elem>(code);
}

Fq::Elem Fq::pth_root(Elem a) const {
  std::uint64_t e = 1;
  for (unsigned i = 1; i < t_->k; ++i) e *= t_->p;
  return pow(a, e);
}

}  // namespace plcert
