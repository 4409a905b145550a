#include "thetacong/theta.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

#include "thetacong/enumeration.hpp"

namespace thetacong {

namespace {

BigInt isqrt_floor(const BigInt& v) {
  if (v <= 0) return 0;
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Forms

SemiIntegralForm::SemiIntegralForm(IntegerMatrix two_t) : two_t_(std::move(two_t)) {
  if (!two_t_.is_square()) throw Error(Errc::NonSquare, "2T must be square");
  if (!two_t_.is_symmetric()) throw Error(Errc::InvalidInput, "2T must be symmetric");
  for (std::size_t i = 0; i < two_t_.rows(); ++i)
    if (!mpz_even_p(two_t_(i, i).get_mpz_t())) throw Error(Errc::InvalidInput, "2T must have an even diagonal");
}

SemiIntegralForm SemiIntegralForm::zero(std::size_t degree) { return SemiIntegralForm(IntegerMatrix(degree, degree)); }

bool is_positive_semidefinite(const IntegerMatrix& m) {
  if (!m.is_square() || !m.is_symmetric()) return false;
  const std::size_t n = m.rows();
  RationalMatrix a = to_rational(m);
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) < 0) return false;
    if (a(k, k) == 0) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      BigRat f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

bool SemiIntegralForm::is_positive_semidefinite() const { return thetacong::is_positive_semidefinite(two_t_); }

bool SemiIntegralForm::is_positive_definite() const {
  return degree() == 0 || thetacong::is_positive_definite(two_t_);
}

std::vector<BigInt> SemiIntegralForm::upper_triangle() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < degree(); ++i)
    for (std::size_t j = i; j < degree(); ++j) out.push_back(two_t_(i, j));
  return out;
}

bool operator<(const SemiIntegralForm& a, const SemiIntegralForm& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const std::size_t n = a.degree();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      int c = cmp(a.two_t_(i, j), b.two_t_(i, j));
      if (c != 0) return c < 0;
    }
  return false;
}

std::vector<SemiIntegralForm> psd_forms(std::size_t degree, long bound) {
  std::vector<SemiIntegralForm> out;
  if (bound < 0) return out;
  const std::size_t n = degree;
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) off.emplace_back(i, j);
  IntegerMatrix m(n, n);
  std::function<void(std::size_t)> fill_off = [&](std::size_t k) {
    if (k == off.size()) {
      if (is_positive_semidefinite(m)) out.emplace_back(m);
      return;
    }
    auto [i, j] = off[k];
    // (2 t_ij)^2 <= (2 t_ii)(2 t_jj)
    BigInt cap = isqrt_floor(m(i, i) * m(j, j));
    for (BigInt v = -cap; v <= cap; ++v) {
      m(i, j) = m(j, i) = v;
      fill_off(k + 1);
    }
    m(i, j) = m(j, i) = 0;
  };
  std::function<void(std::size_t)> fill_diag = [&](std::size_t i) {
    if (i == n) {
      fill_off(0);
      return;
    }
    for (long t = 0; t <= bound; ++t) {
      m(i, i) = 2 * t;
      fill_diag(i + 1);
    }
  };
  fill_diag(0);
  std::sort(out.begin(), out.end());
  return out;
}

BigInt ThetaTable::at(const SemiIntegralForm& t) const {
  auto it = entries.find(t);
  return it == entries.end() ? BigInt(0) : it->second;
}

unsigned worker_count() {
  if (const char* env = std::getenv("THETA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(std::min(v, 256L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// ---------------------------------------------------------------------------
// Counting engine

namespace {

using u128 = unsigned __int128;

BigInt to_big(u128 v) {
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

constexpr std::size_t kShellByteLimit = std::size_t{1} << 30;
constexpr std::size_t kIpTableByteLimit = std::size_t{512} << 20;
constexpr std::size_t kMaskTableByteLimit = std::size_t{256} << 20;
constexpr std::size_t kDenseEntryLimit = std::size_t{1} << 22;

// Index 0 is the zero vector, then the nonzero vectors of norm <= max_norm whose
// first nonzero coordinate is positive, sorted by (norm, coordinates), then their
// negatives in the same order. Indices below `reps` are sign representatives.
struct Shell {
  std::size_t dim = 0;
  std::size_t size = 0;
  std::size_t reps = 0;
  std::int64_t max_norm = -1;
  std::vector<std::int64_t> norms;
  std::vector<std::int32_t> coords_t;  // coordinate k of vector j at k * size + j
  std::vector<std::int32_t> duals;     // (x * G)_k of vector i at i * dim + k

  std::int32_t ip(std::size_t i, std::size_t j) const {
    std::int32_t s = 0;
    for (std::size_t k = 0; k < dim; ++k) s += duals[i * dim + k] * coords_t[k * size + j];
    return s;
  }

  // out[j] = b(x_i, x_j) for j < len
  void row(std::size_t i, std::int32_t* out, std::size_t len) const {
    std::fill(out, out + len, 0);
    for (std::size_t k = 0; k < dim; ++k) {
      const std::int32_t d = duals[i * dim + k];
      if (d == 0) continue;
      const std::int32_t* col = coords_t.data() + k * size;
      for (std::size_t j = 0; j < len; ++j) out[j] += d * col[j];
    }
  }
};

// Levels processed in order; level 0 split across workers by stride.
template <class Fn>
void run_workers(unsigned workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0u, 1u);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&, w] { fn(w, workers); });
  for (auto& t : pool) t.join();
}

}  // namespace

struct RepresentationCounter::Impl {
  IntegerMatrix gram;
  std::size_t n = 0;
  std::vector<std::int64_t> gram64;
  Shell shell;
  std::int64_t hist_bound = 0;
  std::map<std::int64_t, BigInt> hist;  // nonzero vectors per norm, norms <= hist_bound

  BigInt norm_count(std::int64_t norm) {
    if (norm <= 0 || n == 0) return 0;
    if (norm > hist_bound) {
      hist.clear();
      for (auto& [k, v] : norm_counts(gram, BigInt(static_cast<long>(norm)))) hist[k.get_si()] = v;
      hist_bound = norm;
    }
    auto it = hist.find(norm);
    return it == hist.end() ? BigInt(0) : it->second;
  }

  // Makes the shell hold every vector of norm <= max_norm; throws TooLarge past the memory budget.
  void ensure_shell(std::int64_t max_norm) {
    if (shell.max_norm >= max_norm) return;
    BigInt total = 1;
    for (std::int64_t k = 1; k <= max_norm; ++k) total += norm_count(k);
    BigInt bytes = total * BigInt(static_cast<unsigned long>(n * 8 + 16));
    if (bytes > BigInt(static_cast<unsigned long>(kShellByteLimit)))
      throw Error(Errc::TooLarge, "short-vector shell exceeds the memory budget");

    PackedVectors vecs = short_vectors_packed(gram, BigInt(static_cast<long>(max_norm)));
    vecs.sort_by_norm_then_coords();
    std::vector<std::size_t> positives;
    for (std::size_t v = 0; v < vecs.size(); ++v) {
      auto x = vecs[v];
      for (std::size_t k = 0; k < n; ++k)
        if (x[k] != 0) {
          if (x[k] > 0) positives.push_back(v);
          break;
        }
    }
    if (2 * positives.size() != vecs.size()) throw Error(Errc::Internal, "shell is not closed under negation");
    Shell s;
    s.dim = n;
    s.size = vecs.size() + 1;
    s.reps = positives.size() + 1;
    s.max_norm = max_norm;
    s.norms.assign(s.size, 0);
    s.coords_t.assign(n * s.size, 0);
    s.duals.assign(s.size * n, 0);
    std::int64_t max_coord = 0, max_dual = 0;
    for (std::size_t r = 0; r < positives.size(); ++r) {
      const std::size_t v = positives[r];
      const std::size_t j = r + 1, neg = r + s.reps;
      auto x = vecs[v];
      s.norms[j] = s.norms[neg] = vecs.norm(v);
      for (std::size_t k = 0; k < n; ++k) {
        max_coord = std::max(max_coord, std::abs(x[k]));
        if (max_coord > std::numeric_limits<std::int32_t>::max()) throw Error(Errc::TooLarge, "shell coordinates");
        s.coords_t[k * s.size + j] = static_cast<std::int32_t>(x[k]);
        s.coords_t[k * s.size + neg] = -static_cast<std::int32_t>(x[k]);
      }
      for (std::size_t c = 0; c < n; ++c) {
        __int128 acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc += static_cast<__int128>(x[k]) * gram64[k * n + c];
        __int128 mag = acc < 0 ? -acc : acc;
        if (mag > std::numeric_limits<std::int32_t>::max()) throw Error(Errc::TooLarge, "shell dual coordinates");
        max_dual = std::max(max_dual, static_cast<std::int64_t>(mag));
        s.duals[j * n + c] = static_cast<std::int32_t>(acc);
        s.duals[neg * n + c] = -static_cast<std::int32_t>(acc);
      }
    }
    // every partial sum of an inner product must stay inside int32
    __int128 worst = static_cast<__int128>(n) * max_coord * max_dual;
    if (worst > std::numeric_limits<std::int32_t>::max()) throw Error(Errc::TooLarge, "shell inner products");
    shell = std::move(s);
  }

  BigInt count(const SemiIntegralForm& t);
  BigInt count_masks(const IntegerMatrix& r);
  std::map<SemiIntegralForm, BigInt> realized(std::size_t degree, long bound);
  bool realized_dense(std::size_t degree, long bound, std::map<SemiIntegralForm, BigInt>& out);
};

RepresentationCounter::RepresentationCounter(IntegerMatrix gram) : impl_(std::make_unique<Impl>()) {
  if (!gram.is_square()) throw Error(Errc::NonSquare, "Gram matrix must be square");
  if (!gram.is_symmetric()) throw Error(Errc::InvalidInput, "Gram matrix must be symmetric");
  if (gram.rows() > 0 && !is_positive_definite(gram)) throw Error(Errc::NotPositiveDefinite, "Gram matrix");
  impl_->n = gram.rows();
  impl_->gram64.resize(impl_->n * impl_->n);
  for (std::size_t i = 0; i < impl_->n; ++i)
    for (std::size_t j = 0; j < impl_->n; ++j) {
      if (!gram(i, j).fits_slong_p()) throw Error(Errc::TooLarge, "Gram entry exceeds 64 bits");
      impl_->gram64[i * impl_->n + j] = gram(i, j).get_si();
    }
  impl_->gram = std::move(gram);
}

RepresentationCounter::~RepresentationCounter() = default;
RepresentationCounter::RepresentationCounter(RepresentationCounter&&) noexcept = default;
RepresentationCounter& RepresentationCounter::operator=(RepresentationCounter&&) noexcept = default;

const IntegerMatrix& RepresentationCounter::gram() const { return impl_->gram; }
BigInt RepresentationCounter::count(const SemiIntegralForm& t) { return impl_->count(t); }
std::map<SemiIntegralForm, BigInt> RepresentationCounter::realized(std::size_t degree, long bound) {
  return impl_->realized(degree, bound);
}
BigInt RepresentationCounter::norm_count(std::int64_t norm) { return impl_->norm_count(norm); }

BigInt RepresentationCounter::Impl::count(const SemiIntegralForm& t) {
  if (!t.is_positive_semidefinite()) throw Error(Errc::NotPsd, "form is not positive semidefinite");
  const IntegerMatrix& m = t.two_t();
  const std::size_t deg = t.degree();

  // a zero diagonal entry forces x_k = 0 and a zero row
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < deg; ++k) {
    if (m(k, k) != 0) {
      keep.push_back(k);
      continue;
    }
    for (std::size_t j = 0; j < deg; ++j)
      if (m(k, j) != 0) return 0;
  }
  const std::size_t levels = keep.size();
  if (levels == 0) return 1;
  if (n == 0) return 0;
  IntegerMatrix r(levels, levels);
  for (std::size_t a = 0; a < levels; ++a)
    for (std::size_t b = 0; b < levels; ++b) r(a, b) = m(keep[a], keep[b]);
  for (std::size_t a = 0; a < levels; ++a)
    if (!r(a, a).fits_slong_p()) throw Error(Errc::TooLarge, "form diagonal exceeds 64 bits");
  if (levels == 1) return norm_count(r(0, 0).get_si());

  std::int64_t top = 0;
  for (std::size_t a = 0; a < levels; ++a) top = std::max(top, static_cast<std::int64_t>(r(a, a).get_si()));
  try {
    ensure_shell(top);
  } catch (const Error& e) {
    if (e.code() != Errc::TooLarge) throw;
    return representation_number_affine(gram, SemiIntegralForm(r));
  }
  return count_masks(r);
}

// Bitset backtracking over the union of the needed shells. masks[d][l] is the
// candidate set of level l after fixing levels < d.
BigInt RepresentationCounter::Impl::count_masks(const IntegerMatrix& r) {
  const std::size_t levels = r.rows();
  std::vector<std::int64_t> need(levels);
  for (std::size_t a = 0; a < levels; ++a) need[a] = r(a, a).get_si();
  std::vector<std::int64_t> want(levels * levels);
  for (std::size_t a = 0; a < levels; ++a)
    for (std::size_t b = 0; b < levels; ++b) {
      // entries beyond Cauchy-Schwarz make the count zero
      if (!r(a, b).fits_slong_p()) return 0;
      want[a * levels + b] = r(a, b).get_si();
    }

  std::vector<std::size_t> universe;  // shell indices
  for (std::size_t j = 1; j < shell.size; ++j)
    if (std::find(need.begin(), need.end(), shell.norms[j]) != need.end()) universe.push_back(j);
  const std::size_t u = universe.size();
  const std::size_t words = (u + 63) / 64;
  if (u == 0) return 0;

  std::vector<std::uint64_t> init(levels * words, 0);
  for (std::size_t a = 0; a < levels; ++a)
    for (std::size_t i = 0; i < u; ++i)
      if (shell.norms[universe[i]] == need[a]) init[a * words + i / 64] |= std::uint64_t{1} << (i % 64);

  // optional table of {y : b(x, y) = c} for every x in the universe and every needed c
  std::vector<std::int64_t> values;
  for (std::size_t a = 0; a < levels; ++a)
    for (std::size_t b = a + 1; b < levels; ++b) values.push_back(want[a * levels + b]);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  auto slot_of = [&](std::int64_t c) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
  };
  std::vector<std::uint64_t> table;
  const bool use_table = u * values.size() * words * 8 <= kMaskTableByteLimit;
  if (use_table) {
    table.assign(u * values.size() * words, 0);
    std::vector<std::int32_t> row(shell.size);
    for (std::size_t i = 0; i < u; ++i) {
      shell.row(universe[i], row.data(), shell.size);
      for (std::size_t y = 0; y < u; ++y) {
        std::int64_t c = row[universe[y]];
        std::size_t s = slot_of(c);
        if (s < values.size() && values[s] == c)
          table[(i * values.size() + s) * words + y / 64] |= std::uint64_t{1} << (y % 64);
      }
    }
  }

  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(u)));
  std::vector<u128> partial(workers, 0);
  run_workers(workers, [&](unsigned w, unsigned stride) {
    std::vector<std::uint64_t> masks((levels + 1) * levels * words);
    auto mask = [&](std::size_t depth, std::size_t level) { return masks.data() + (depth * levels + level) * words; };
    std::copy(init.begin(), init.end(), mask(0, 0));
    u128 total = 0;
    std::size_t seen = 0;

    // restrict dst to {y in src : b(x, y) = c}
    auto restrict_to = [&](std::uint64_t* dst, const std::uint64_t* src, std::size_t x, std::int64_t c) {
      if (use_table) {
        std::size_t s = slot_of(c);
        const std::uint64_t* e = table.data() + (x * values.size() + s) * words;
        for (std::size_t k = 0; k < words; ++k) dst[k] = src[k] & e[k];
        return;
      }
      for (std::size_t k = 0; k < words; ++k) {
        std::uint64_t bits = src[k], keep = 0;
        while (bits) {
          int b = std::countr_zero(bits);
          bits &= bits - 1;
          if (shell.ip(universe[x], universe[k * 64 + static_cast<std::size_t>(b)]) == c) keep |= std::uint64_t{1} << b;
        }
        dst[k] = keep;
      }
    };
    auto any = [&](const std::uint64_t* m) {
      for (std::size_t k = 0; k < words; ++k)
        if (m[k]) return true;
      return false;
    };

    std::function<void(std::size_t)> descend = [&](std::size_t d) {
      const std::uint64_t* cand = mask(d, d);
      for (std::size_t k = 0; k < words; ++k) {
        std::uint64_t bits = cand[k];
        while (bits) {
          const std::size_t x = k * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          if (d == 0 && seen++ % stride != w) continue;
          if (d + 2 == levels) {
            std::uint64_t* tmp = mask(d + 1, levels - 1);
            restrict_to(tmp, mask(d, levels - 1), x, want[d * levels + levels - 1]);
            std::uint64_t c = 0;
            for (std::size_t q = 0; q < words; ++q) c += static_cast<std::uint64_t>(std::popcount(tmp[q]));
            total += c;
            continue;
          }
          bool alive = true;
          for (std::size_t l = d + 1; l < levels && alive; ++l) {
            restrict_to(mask(d + 1, l), mask(d, l), x, want[d * levels + l]);
            alive = any(mask(d + 1, l));
          }
          if (alive) descend(d + 1);
        }
      }
    };
    // masks for level 0 live at depth 0
    for (std::size_t l = 1; l < levels; ++l) std::copy(init.begin() + l * words, init.begin() + (l + 1) * words, mask(0, l));
    descend(0);
    partial[w] = total;
  });
  u128 total = 0;
  for (auto v : partial) total += v;
  return to_big(total);
}

std::map<SemiIntegralForm, BigInt> RepresentationCounter::Impl::realized(std::size_t degree, long bound) {
  std::map<SemiIntegralForm, BigInt> out;
  if (degree == 0) throw Error(Errc::InvalidInput, "degree must be at least 1");
  if (bound < 0) return out;
  out.emplace(SemiIntegralForm::zero(degree), 1);
  if (n == 0 || bound == 0) return out;
  if (degree == 1) {
    for (long t = 1; t <= bound; ++t) {
      BigInt c = norm_count(2 * t);
      if (c != 0) out.emplace(SemiIntegralForm(IntegerMatrix{{2 * t}}), c);
    }
    return out;
  }
  out.clear();
  if (realized_dense(degree, bound, out)) return out;
  for (const auto& f : psd_forms(degree, bound)) {
    BigInt c = count(f);
    if (c != 0) out.emplace(f, c);
  }
  return out;
}

// All tuples from the shell at once, every member restricted to sign
// representatives: the first degree - 1 members are enumerated and the last one
// is histogrammed by its norm and inner products. A tuple with Gram 2T has a
// unique representative tuple with Gram S 2T S for a sign pattern S on the
// nonzero members, so A(T) is the sum of the histogram over those patterns.
bool RepresentationCounter::Impl::realized_dense(std::size_t degree, long bound, std::map<SemiIntegralForm, BigInt>& out) {
  const std::size_t deg = degree;
  const std::int64_t off = 2 * static_cast<std::int64_t>(bound);
  const std::size_t diag_radix = static_cast<std::size_t>(bound) + 1;
  const std::size_t off_radix = static_cast<std::size_t>(2 * off + 1);

  // strides of the mixed-radix key
  std::vector<std::size_t> wdiag(deg), woff(deg * deg, 0);
  double approx = 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < deg; ++i) {
    wdiag[i] = total;
    approx *= static_cast<double>(diag_radix);
    if (approx > static_cast<double>(kDenseEntryLimit)) return false;
    total *= diag_radix;
  }
  for (std::size_t i = 0; i < deg; ++i)
    for (std::size_t j = i + 1; j < deg; ++j) {
      woff[i * deg + j] = total;
      approx *= static_cast<double>(off_radix);
      if (approx > static_cast<double>(kDenseEntryLimit)) return false;
      total *= off_radix;
    }

  try {
    ensure_shell(2 * static_cast<std::int64_t>(bound));
  } catch (const Error& e) {
    if (e.code() != Errc::TooLarge) throw;
    return false;
  }
  const std::size_t reps = shell.reps;
  // histogram cells stay below reps^deg
  if (static_cast<double>(deg) * std::log2(static_cast<double>(reps)) >= 63.0) return false;

  std::vector<std::size_t> ncode(reps);
  for (std::size_t x = 0; x < reps; ++x) ncode[x] = static_cast<std::size_t>(shell.norms[x] / 2);

  const bool table_rows = deg >= 3 && off <= 127 && reps * reps <= kIpTableByteLimit;
  std::vector<std::int8_t> ip_table;
  if (table_rows) {
    ip_table.resize(reps * reps);
    std::vector<std::int32_t> row(reps);
    for (std::size_t i = 0; i < reps; ++i) {
      shell.row(i, row.data(), reps);
      for (std::size_t j = 0; j < reps; ++j) ip_table[i * reps + j] = static_cast<std::int8_t>(row[j]);
    }
  }

  unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(reps)));
  while (workers > 1 && workers * total * 8 > (std::size_t{1} << 30)) --workers;
  std::vector<std::vector<std::uint64_t>> dense(workers);

  run_workers(workers, [&](unsigned w, unsigned stride) {
    std::vector<std::uint64_t>& h = dense[w];
    h.assign(total, 0);
    std::vector<std::vector<std::int32_t>> rows(deg, std::vector<std::int32_t>(table_rows ? 0 : reps));
    std::vector<const std::int8_t*> trow(deg, nullptr);

    auto ip_with = [&](std::size_t level, std::size_t y) -> std::int64_t {
      return table_rows ? trow[level][y] : rows[level][y];
    };
    auto load_row = [&](std::size_t level, std::size_t x) {
      if (table_rows)
        trow[level] = ip_table.data() + x * reps;
      else
        shell.row(x, rows[level].data(), reps);
    };

    const std::size_t last = deg - 1;
    auto last_level = [&](std::size_t base) {
      std::size_t shifted = base;
      for (std::size_t j = 0; j < last; ++j) shifted += static_cast<std::size_t>(off) * woff[j * deg + last];
      if (deg == 2) {
        const std::int32_t* r0 = rows[0].data();
        const std::int64_t w01 = static_cast<std::int64_t>(woff[1]);
        const std::size_t wd = wdiag[1];
        for (std::size_t y = 0; y < reps; ++y)
          ++h[static_cast<std::size_t>(static_cast<std::int64_t>(shifted + ncode[y] * wd) + r0[y] * w01)];
        return;
      }
      if (deg == 3 && table_rows) {
        const std::int8_t* r0 = trow[0];
        const std::int8_t* r1 = trow[1];
        const std::int64_t w02 = static_cast<std::int64_t>(woff[2]), w12 = static_cast<std::int64_t>(woff[5]);
        const std::size_t wd = wdiag[2];
        for (std::size_t y = 0; y < reps; ++y)
          ++h[static_cast<std::size_t>(static_cast<std::int64_t>(shifted + ncode[y] * wd) + r0[y] * w02 + r1[y] * w12)];
        return;
      }
      for (std::size_t y = 0; y < reps; ++y) {
        std::int64_t idx = static_cast<std::int64_t>(shifted + ncode[y] * wdiag[last]);
        for (std::size_t j = 0; j < last; ++j) idx += ip_with(j, y) * static_cast<std::int64_t>(woff[j * deg + last]);
        ++h[static_cast<std::size_t>(idx)];
      }
    };

    std::function<void(std::size_t, std::size_t)> descend = [&](std::size_t level, std::size_t base) {
      const std::size_t begin = level == 0 ? w : 0;
      const std::size_t step = level == 0 ? stride : 1;
      for (std::size_t x = begin; x < reps; x += step) {
        std::size_t idx = base + ncode[x] * wdiag[level];
        for (std::size_t j = 0; j < level; ++j)
          idx += static_cast<std::size_t>(ip_with(j, x) + off) * woff[j * deg + level];
        load_row(level, x);
        if (level + 2 == deg)
          last_level(idx);
        else
          descend(level + 1, idx);
      }
    };
    descend(0, 0);
  });

  std::vector<std::uint64_t>& h = dense[0];
  for (unsigned w = 1; w < workers; ++w)
    for (std::size_t i = 0; i < total; ++i) h[i] += dense[w][i];

  std::vector<u128> acc(total, 0);
  std::vector<std::int64_t> code(deg * deg);
  std::vector<std::size_t> support;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (h[idx] == 0) continue;
    support.clear();
    for (std::size_t i = 0; i < deg; ++i) {
      code[i * deg + i] = static_cast<std::int64_t>((idx / wdiag[i]) % diag_radix);
      if (code[i * deg + i] > 0) support.push_back(i);
    }
    for (std::size_t i = 0; i < deg; ++i)
      for (std::size_t j = i + 1; j < deg; ++j)
        code[i * deg + j] = static_cast<std::int64_t>((idx / woff[i * deg + j]) % off_radix) - off;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << support.size()); ++mask) {
      std::vector<int> sign(deg, 1);
      for (std::size_t k = 0; k < support.size(); ++k)
        if (mask >> k & 1) sign[support[k]] = -1;
      std::size_t target = 0;
      for (std::size_t i = 0; i < deg; ++i) {
        target += static_cast<std::size_t>(code[i * deg + i]) * wdiag[i];
        for (std::size_t j = i + 1; j < deg; ++j)
          target += static_cast<std::size_t>(sign[i] * sign[j] * code[i * deg + j] + off) * woff[i * deg + j];
      }
      acc[target] += h[idx];
    }
  }

  for (std::size_t idx = 0; idx < total; ++idx) {
    if (acc[idx] == 0) continue;
    IntegerMatrix m(deg, deg);
    for (std::size_t i = 0; i < deg; ++i) {
      m(i, i) = 2 * static_cast<long>((idx / wdiag[i]) % diag_radix);
      for (std::size_t j = i + 1; j < deg; ++j)
        m(i, j) = m(j, i) = static_cast<long>((idx / woff[i * deg + j]) % off_radix) - off;
    }
    out.emplace(SemiIntegralForm(std::move(m)), to_big(acc[idx]));
  }
  return true;
}

// ---------------------------------------------------------------------------

BigInt representation_number(const IntegerMatrix& gram, const SemiIntegralForm& t) {
  RepresentationCounter counter(gram);
  return counter.count(t);
}

BigInt representation_number(const Lattice& lattice, const SemiIntegralForm& t) {
  return representation_number(lattice.gram, t);
}

BigInt representation_number_affine(const IntegerMatrix& gram, const SemiIntegralForm& t) {
  if (!t.is_positive_semidefinite()) throw Error(Errc::NotPsd, "form is not positive semidefinite");
  const IntegerMatrix& m = t.two_t();
  const std::size_t deg = t.degree();
  if (gram.rows() == 0) {
    return m.is_zero() ? BigInt(1) : BigInt(0);
  }
  const std::size_t n = gram.rows();
  std::vector<std::vector<BigInt>> chosen(deg);
  std::function<BigInt(std::size_t)> descend = [&](std::size_t k) -> BigInt {
    if (k == deg) return 1;
    if (m(k, k) == 0) {
      for (std::size_t j = 0; j < k; ++j)
        if (m(j, k) != 0) return 0;
      chosen[k].assign(n, BigInt(0));
      return descend(k + 1);
    }
    std::vector<InnerProductConstraint> cons;
    for (std::size_t j = 0; j < k; ++j) cons.push_back({chosen[j], m(j, k)});
    auto cands = constrained_vectors(gram, m(k, k), cons);
    if (k + 1 == deg) return BigInt(static_cast<unsigned long>(cands.size()));
    BigInt total = 0;
    for (auto& c : cands) {
      chosen[k] = c.coords;
      total += descend(k + 1);
    }
    return total;
  };
  return descend(0);
}

ThetaTable theta_table(RepresentationCounter& counter, std::string label, std::size_t degree, long bound) {
  if (degree == 0) throw Error(Errc::InvalidInput, "degree must be at least 1");
  ThetaTable table{std::move(label), degree, bound, {}};
  auto realized = counter.realized(degree, bound);
  for (const auto& f : psd_forms(degree, bound)) {
    auto it = realized.find(f);
    table.entries.emplace(f, it == realized.end() ? BigInt(0) : it->second);
  }
  if (table.entries.size() < realized.size()) throw Error(Errc::Internal, "a realized form is missing from the table");
  return table;
}

ThetaTable theta_table(const Lattice& lattice, std::size_t degree, long bound) {
  RepresentationCounter counter(lattice.gram);
  return theta_table(counter, lattice.label, degree, bound);
}

std::vector<ThetaOperatorEntry> theta_operator(const ThetaTable& table) {
  std::vector<ThetaOperatorEntry> out;
  out.reserve(table.entries.size());
  for (const auto& [f, c] : table.entries) out.push_back({f, f.det_two_t(), c});
  return out;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

bool divisible(const BigInt& v, unsigned long p) { return mpz_divisible_ui_p(v.get_mpz_t(), p) != 0; }

void require_prime(unsigned long p) {
  if (!is_odd_prime(p)) throw Error(Errc::NotOddPrime, std::to_string(p) + " is not an odd prime");
}

CongruenceReport make_report(std::string claim, unsigned long p, const ThetaTable& t) {
  CongruenceReport r;
  r.claim = std::move(claim);
  r.p = p;
  r.degree = t.degree;
  r.diag_bound = t.diag_bound;
  return r;
}

}  // namespace

CongruenceReport congruence_check_theta_op(const ThetaTable& table, unsigned long p) {
  require_prime(p);
  CongruenceReport r = make_report("theta_operator_mod_p", p, table);
  for (const auto& e : theta_operator(table)) {
    if (e.det_two_t == 0) continue;
    ++r.forms_checked;
    if (!divisible(e.det_two_t * e.count, p)) r.witnesses.push_back({e.form, e.count, e.det_two_t, std::nullopt});
  }
  r.holds = r.witnesses.empty();
  return r;
}

CongruenceReport congruence_check_theta_op(const Lattice& lattice, unsigned long p, std::size_t degree, long bound) {
  require_prime(p);
  return congruence_check_theta_op(theta_table(lattice, degree, bound), p);
}

CongruenceReport singularity_check(const ThetaTable& table, unsigned long p) {
  require_prime(p);
  CongruenceReport r = make_report("singular_mod_p", p, table);
  for (const auto& e : theta_operator(table)) {
    if (e.det_two_t == 0) continue;
    ++r.forms_checked;
    if (!divisible(e.count, p)) r.witnesses.push_back({e.form, e.count, e.det_two_t, std::nullopt});
  }
  r.holds = r.witnesses.empty();
  return r;
}

CongruenceReport singularity_check(const Lattice& lattice, unsigned long p, std::size_t degree, long bound) {
  require_prime(p);
  return singularity_check(theta_table(lattice, degree, bound), p);
}

CongruenceReport fixed_congruence_check(const ThetaTable& lattice_table, const ThetaTable& fixed_table, unsigned long p) {
  require_prime(p);
  if (lattice_table.degree != fixed_table.degree || lattice_table.diag_bound != fixed_table.diag_bound)
    throw Error(Errc::InvalidInput, "tables cover different ranges");
  CongruenceReport r = make_report("fixed_congruence", p, lattice_table);
  for (const auto& [f, c] : lattice_table.entries) {
    ++r.forms_checked;
    BigInt ref = fixed_table.at(f);
    if (!divisible(c - ref, p)) r.witnesses.push_back({f, c, f.det_two_t(), ref});
  }
  r.holds = r.witnesses.empty();
  return r;
}

CongruenceReport fixed_congruence_check(const Lattice& lattice, const Automorphism& sigma, std::size_t degree, long bound) {
  Sublattice m0 = fixed_sublattice(lattice, sigma);
  ThetaTable big = theta_table(lattice, degree, bound);
  RepresentationCounter fixed_counter(m0.gram());
  ThetaTable small = theta_table(fixed_counter, "fixed", degree, bound);
  return fixed_congruence_check(big, small, sigma.order);
}

CongruenceReport convolution_check(const Lattice& a, const Lattice& b, std::size_t degree, long bound) {
  ThetaTable ta = theta_table(a, degree, bound);
  ThetaTable tb = theta_table(b, degree, bound);
  ThetaTable tab = theta_table(direct_sum(a, b), degree, bound);
  CongruenceReport r = make_report("convolution", 0, tab);
  for (const auto& [f, direct] : tab.entries) {
    ++r.forms_checked;
    BigInt conv = 0;
    for (const auto& [f1, c1] : ta.entries) {
      if (c1 == 0) continue;
      bool fits = true;
      for (std::size_t i = 0; i < degree && fits; ++i) fits = f1.two_t()(i, i) <= f.two_t()(i, i);
      if (!fits) continue;
      auto it = tb.entries.find(SemiIntegralForm(f.two_t() - f1.two_t()));
      if (it != tb.entries.end()) conv += c1 * it->second;
    }
    if (conv != direct) r.witnesses.push_back({f, direct, f.det_two_t(), conv});
  }
  r.holds = r.witnesses.empty();
  return r;
}

ConvolutionResult convolution_check_form(const Lattice& a, const Lattice& b, const SemiIntegralForm& t) {
  if (!t.is_positive_semidefinite()) throw Error(Errc::NotPsd, "form is not positive semidefinite");
  const std::size_t deg = t.degree();
  const IntegerMatrix& m = t.two_t();
  RepresentationCounter ca(a.gram), cb(b.gram);
  ConvolutionResult res;
  {
    RepresentationCounter cab(direct_sum(a, b).gram);
    res.direct = cab.count(t);
  }
  for (std::size_t i = 0; i < deg; ++i)
    if (!m(i, i).fits_slong_p()) throw Error(Errc::TooLarge, "form diagonal exceeds 64 bits");

  auto represented = [](RepresentationCounter& c, std::int64_t norm) { return norm == 0 || c.norm_count(norm) != 0; };
  IntegerMatrix t1(deg, deg);
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < deg; ++i)
    for (std::size_t j = i + 1; j < deg; ++j) off.emplace_back(i, j);

  std::function<void(std::size_t)> fill_off = [&](std::size_t k) {
    if (k == off.size()) {
      IntegerMatrix t2 = m - t1;
      if (!is_positive_semidefinite(t1) || !is_positive_semidefinite(t2)) return;
      BigInt c1 = ca.count(SemiIntegralForm(t1));
      if (c1 == 0) return;
      BigInt c2 = cb.count(SemiIntegralForm(t2));
      if (c2 == 0) return;
      res.convolved += c1 * c2;
      ++res.splittings;
      return;
    }
    auto [i, j] = off[k];
    BigInt cap1 = isqrt_floor(t1(i, i) * t1(j, j));
    BigInt cap2 = isqrt_floor((m(i, i) - t1(i, i)) * (m(j, j) - t1(j, j)));
    BigInt lo = std::max(BigInt(-cap1), BigInt(m(i, j) - cap2));
    BigInt hi = std::min(cap1, BigInt(m(i, j) + cap2));
    for (BigInt v = lo; v <= hi; ++v) {
      t1(i, j) = t1(j, i) = v;
      fill_off(k + 1);
    }
    t1(i, j) = t1(j, i) = 0;
  };
  std::function<void(std::size_t)> fill_diag = [&](std::size_t i) {
    if (i == deg) {
      fill_off(0);
      return;
    }
    const std::int64_t total = m(i, i).get_si();
    for (std::int64_t d = 0; d <= total; d += 2) {
      if (!represented(ca, d) || !represented(cb, total - d)) continue;
      t1(i, i) = d;
      fill_diag(i + 1);
    }
  };
  fill_diag(0);
  return res;
}

}  // namespace thetacong
