#include "wittlab/witt.hpp"
#include "wittlab/serialize.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace wl {

TruncationSet::TruncationSet(std::vector<u64> elems) : e_(std::move(elems)) {
  std::sort(e_.begin(), e_.end());
  e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
  if (e_.empty() || e_.front() != 1) throw MathError("truncation set must contain 1");
  for (u64 n : e_)
    for (u64 d : divisors(n))
      if (!contains(d)) throw MathError("truncation set not divisor closed: " + std::to_string(d) + " | " + std::to_string(n));
}

TruncationSet TruncationSet::range(u64 N) {
  if (N == 0) throw MathError("truncation range must be nonempty");
  std::vector<u64> v(N);
  for (u64 i = 0; i < N; ++i) v[i] = i + 1;
  TruncationSet t;
  t.e_ = std::move(v);
  return t;
}

TruncationSet TruncationSet::p_typical(u64 p, unsigned length) {
  if (!is_prime(p) || length == 0) throw MathError("p-typical truncation needs a prime and positive length");
  std::vector<u64> v{1};
  for (unsigned i = 1; i < length; ++i) v.push_back(ipow(p, i));
  TruncationSet t;
  t.e_ = std::move(v);
  return t;
}

size_t TruncationSet::index(u64 n) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), n);
  if (it == e_.end() || *it != n) throw MathError("index " + std::to_string(n) + " outside truncation");
  return static_cast<size_t>(it - e_.begin());
}

TruncationSet TruncationSet::quotient(u64 n) const {
  std::vector<u64> v;
  for (u64 m : e_)
    if (m % n == 0) v.push_back(m / n);
  if (v.empty()) throw MathError("truncation quotient by " + std::to_string(n) + " is empty");
  return TruncationSet(std::move(v));
}

bool TruncationSet::is_p_typical(u64 p) const {
  u64 q = 1;
  for (u64 n : e_) {
    if (n != q) return false;
    q *= p;
  }
  return true;
}

std::string TruncationSet::str() const {
  std::string s = "{";
  for (size_t i = 0; i < e_.size(); ++i) s += (i ? "," : "") + std::to_string(e_[i]);
  return s + "}";
}

namespace {
std::mutex limits_mu;
WittLimits limits_value;
}  // namespace

WittLimits witt_limits() {
  std::lock_guard<std::mutex> g(limits_mu);
  return limits_value;
}
void set_witt_limits(const WittLimits& l) {
  std::lock_guard<std::mutex> g(limits_mu);
  limits_value = l;
}

void detail::check_universal_limits(const TruncationSet& t, u64 top) {
  WittLimits l = witt_limits();
  if (top <= l.max_index) return;
  if (t.size() > 1 && t.size() <= l.max_p_typical) {
    u64 p = t.elements()[1];
    if (is_prime(p) && t.is_p_typical(p) && top / t.max() <= l.max_index) return;
  }
  throw MathError("truncation " + t.str() + " exceeds the universal-polynomial cap (max index " +
                  std::to_string(l.max_index) + ", p-typical length " + std::to_string(l.max_p_typical) + ")");
}

std::string uop_name(UOp op) {
  switch (op) {
    case UOp::Add: return "add";
    case UOp::Mul: return "mul";
    case UOp::Neg: return "neg";
    case UOp::Frob: return "frob";
  }
  return "?";
}

namespace {

constexpr int kCacheVersion = 1;

struct Key {
  UOp op;
  u64 index, m;
  bool operator==(const Key& o) const { return op == o.op && index == o.index && m == o.m; }
};
struct KeyHash {
  size_t operator()(const Key& k) const {
    return std::hash<u64>()(k.index * 1000003ULL + k.m * 31ULL + static_cast<u64>(k.op));
  }
};

std::shared_mutex cache_mu;
std::mutex disk_mu;
std::unordered_map<Key, std::shared_ptr<const ZPoly>, KeyHash> poly_cache;
std::unordered_map<Key, std::shared_ptr<const CompiledPoly>, KeyHash> compiled_cache;

std::vector<std::string> var_names(const Key& k) {
  std::vector<std::string> v;
  u64 top = k.op == UOp::Frob ? k.index * k.m : k.index;
  auto ds = divisors(top);
  for (u64 d : ds) v.push_back("x" + std::to_string(d));
  if (k.op == UOp::Add || k.op == UOp::Mul)
    for (u64 d : ds) v.push_back("y" + std::to_string(d));
  return v;
}

// sum_{d|n} d * v_d^{n/d} with v_d the variable at offset + position of d
ZPoly ghost_poly(const std::vector<std::string>& vars, const std::vector<u64>& ds, size_t offset, u64 n) {
  ZPoly acc(vars);
  for (size_t i = 0; i < ds.size(); ++i) {
    u64 d = ds[i];
    if (n % d) continue;
    Exps e(vars.size(), 0);
    e[offset + i] = static_cast<uint32_t>(n / d);
    acc = acc + ZPoly::from_terms(vars, {{e, Int(static_cast<unsigned long>(d))}});
  }
  return acc;
}

std::filesystem::path cache_path(const Key& k) {
  const char* dir = std::getenv("WITTLAB_CACHE_DIR");
  if (!dir || !*dir) return {};
  std::string name = uop_name(k.op) + "_" + (k.op == UOp::Frob ? std::to_string(k.m) + "_" : "") + std::to_string(k.index) + ".json";
  return std::filesystem::path(dir) / name;
}

std::shared_ptr<const ZPoly> load_disk(const Key& k) {
  auto path = cache_path(k);
  if (path.empty() || !std::filesystem::exists(path)) return nullptr;
  try {
    std::ifstream in(path);
    json j = json::parse(in);
    if (j.at("version").get<int>() != kCacheVersion || j.at("op").get<std::string>() != uop_name(k.op) ||
        j.at("index").get<u64>() != k.index || (k.op == UOp::Frob && j.at("n").get<u64>() != k.m))
      return nullptr;
    auto p = poly_from_json<Int>(j.at("poly"), [](const std::string& s) { return Int(s); });
    if (p.vars() != var_names(k)) return nullptr;
    return std::make_shared<const ZPoly>(std::move(p));
  } catch (const std::exception&) {
    return nullptr;  // unreadable cache entries are regenerated
  }
}

void store_disk(const Key& k, const ZPoly& p) {
  auto path = cache_path(k);
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  json j{{"op", uop_name(k.op)}, {"index", k.index}, {"version", kCacheVersion}, {"poly", poly_to_json(p)}};
  if (k.op == UOp::Frob) j["n"] = k.m;
  std::ostringstream tmpname;
  tmpname << path.string() << ".tmp" << std::hash<std::thread::id>()(std::this_thread::get_id());
  {
    std::ofstream out(tmpname.str());
    if (!out) return;
    out << j.dump();
  }
  std::filesystem::rename(tmpname.str(), path, ec);
}

ZPoly generate(const Key& k) {
  auto vars = var_names(k);
  u64 n = k.index;
  u64 top = k.op == UOp::Frob ? k.index * k.m : k.index;
  auto ds = divisors(top);
  ZPoly acc(vars);
  switch (k.op) {
    case UOp::Add: acc = ghost_poly(vars, ds, 0, n) + ghost_poly(vars, ds, ds.size(), n); break;
    case UOp::Mul: acc = ghost_poly(vars, ds, 0, n) * ghost_poly(vars, ds, ds.size(), n); break;
    case UOp::Neg: acc = -ghost_poly(vars, ds, 0, n); break;
    case UOp::Frob: acc = ghost_poly(vars, ds, 0, top); break;
  }
  for (u64 d : divisors(n)) {
    if (d == n) continue;
    auto sub = universal_poly(k.op, d, k.m);
    // place the lower-index variables into this variable list
    std::vector<size_t> map;
    u64 subtop = k.op == UOp::Frob ? d * k.m : d;
    auto sds = divisors(subtop);
    auto pos = [&](u64 e) { return static_cast<size_t>(std::lower_bound(ds.begin(), ds.end(), e) - ds.begin()); };
    for (u64 e : sds) map.push_back(pos(e));
    if (k.op == UOp::Add || k.op == UOp::Mul)
      for (u64 e : sds) map.push_back(ds.size() + pos(e));
    ZPoly s = sub->remap(vars, map).pow(static_cast<unsigned>(n / d));
    acc = acc - s.scaled(Int(static_cast<unsigned long>(d)));
  }
  std::vector<ZPoly::Term> ts;
  for (auto& [e, c] : acc.terms()) {
    if (!mpz_divisible_ui_p(c.get_mpz_t(), n))
      throw MathError("universal polynomial generation: inexact division by " + std::to_string(n));
    Int q;
    mpz_divexact_ui(q.get_mpz_t(), c.get_mpz_t(), n);
    ts.push_back({e, q});
  }
  return ZPoly::from_terms(vars, std::move(ts));
}

}  // namespace

std::shared_ptr<const ZPoly> universal_poly(UOp op, u64 index, u64 frob_m) {
  if (index == 0) throw MathError("universal polynomial index must be positive");
  if (op == UOp::Frob && frob_m == 0) throw MathError("frobenius universal polynomial needs n");
  if (op != UOp::Frob) frob_m = 0;
  Key k{op, index, frob_m};
  {
    std::shared_lock<std::shared_mutex> g(cache_mu);
    auto it = poly_cache.find(k);
    if (it != poly_cache.end()) return it->second;
  }
  auto p = load_disk(k);
  bool fresh = false;
  if (!p) {
    p = std::make_shared<const ZPoly>(generate(k));
    fresh = true;
  }
  {
    std::unique_lock<std::shared_mutex> g(cache_mu);
    auto [it, inserted] = poly_cache.emplace(k, p);
    if (!inserted) return it->second;
  }
  if (fresh) {
    std::lock_guard<std::mutex> g(disk_mu);
    store_disk(k, *p);
  }
  return p;
}

std::shared_ptr<const CompiledPoly> universal_compiled(UOp op, u64 index, u64 frob_m) {
  if (op != UOp::Frob) frob_m = 0;
  Key k{op, index, frob_m};
  {
    std::shared_lock<std::shared_mutex> g(cache_mu);
    auto it = compiled_cache.find(k);
    if (it != compiled_cache.end()) return it->second;
  }
  auto p = universal_poly(op, index, frob_m);
  auto c = std::make_shared<CompiledPoly>();
  c->max_deg.assign(p->nvars(), 0);
  for (auto& [e, coeff] : p->terms()) {
    CompiledPoly::Term t{coeff, {}};
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) {
        t.factors.push_back({static_cast<uint32_t>(i), e[i]});
        c->max_deg[i] = std::max(c->max_deg[i], e[i]);
      }
    c->terms.push_back(std::move(t));
  }
  std::unique_lock<std::shared_mutex> g(cache_mu);
  auto [it, inserted] = compiled_cache.emplace(k, c);
  return it->second;
}

void clear_universal_memory_cache() {
  std::unique_lock<std::shared_mutex> g(cache_mu);
  poly_cache.clear();
  compiled_cache.clear();
}

ArtinHasseContext artin_hasse(u64 p, u64 T) {
  if (!is_prime(p)) throw MathError("artin_hasse: p must be prime");
  if (T == 0) throw MathError("artin_hasse: bound must be positive");
  RationalRing Q;
  std::vector<Rat> g;
  for (u64 n = 1; n <= T; ++n) {
    u64 m = n;
    while (m % p == 0) m /= p;
    g.push_back(m == 1 ? Rat(1) : Rat(0));
  }
  auto x = from_ghost(Q, TruncationSet::range(T), g);
  ArtinHasseContext ctx{p, T, x.comps()};
  for (auto& c : ctx.comps)
    if (mpz_divisible_ui_p(c.get_den().get_mpz_t(), p)) throw MathError("artin_hasse: component not p-integral");
  return ctx;
}

}  // namespace wl
