#include "thetacong/lattice_core.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

#include "thetacong/enumeration.hpp"

namespace thetacong {

ValidationReport validate_even_lattice(const IntegerMatrix& gram) {
  ValidationReport r;
  r.square = gram.is_square();
  if (!r.square) return r;
  r.symmetric = gram.is_symmetric();
  r.even_diagonal = true;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (!mpz_even_p(gram(i, i).get_mpz_t())) r.even_diagonal = false;
  r.determinant = det_bareiss(gram);
  r.positive_definite = r.symmetric && gram.rows() > 0 && is_positive_definite(gram);
  r.unimodular = *r.determinant == 1;
  return r;
}

Lattice make_lattice(IntegerMatrix gram, std::string label) {
  if (!gram.is_square()) throw Error(Errc::NonSquare, "Gram matrix is not square");
  if (gram.rows() == 0) throw Error(Errc::InvalidInput, "Gram matrix is empty");
  if (!gram.is_symmetric()) throw Error(Errc::InvalidInput, "Gram matrix is not symmetric");
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (!mpz_even_p(gram(i, i).get_mpz_t())) throw Error(Errc::InvalidInput, "Gram matrix has an odd diagonal entry");
  if (!is_positive_definite(gram)) throw Error(Errc::NotPositiveDefinite, "Gram matrix is not positive definite");
  return Lattice{std::move(gram), std::move(label)};
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntegerMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
  std::string label;
  if (!a.label.empty() && !b.label.empty()) label = a.label + "+" + b.label;
  return Lattice{std::move(g), std::move(label)};
}

// ---------------------------------------------------------------------------

Sublattice::Sublattice(std::shared_ptr<const Lattice> parent, IntegerMatrix coords)
    : parent_(std::move(parent)), coords_(std::move(coords)) {
  if (coords_.rows() == 0) coords_ = IntegerMatrix(0, parent_->rank());
  if (coords_.cols() != parent_->rank()) throw Error(Errc::DimensionMismatch, "sublattice coordinates");
  if (coords_.rows() > 0 && thetacong::rank(coords_) != coords_.rows())
    throw Error(Errc::NotFullRank, "sublattice coordinates are linearly dependent");
  gram_ = gram_of(coords_, parent_->gram);
}

Sublattice::Sublattice(const Lattice& parent, IntegerMatrix coords)
    : Sublattice(std::make_shared<const Lattice>(parent), std::move(coords)) {}

BigInt Sublattice::determinant() const { return det_bareiss(gram_); }

Lattice Sublattice::as_lattice(std::string label) const { return Lattice{gram_, std::move(label)}; }

// ---------------------------------------------------------------------------
// Kneser decomposition

namespace {

struct DualRows {
  std::size_t n;
  std::vector<std::int64_t> rows;  // x * G for every vector

  std::int64_t pair(const PackedVectors& v, std::size_t i, std::size_t j) const {
    auto x = v[i];
    std::int64_t s = 0;
    for (std::size_t k = 0; k < n; ++k) s += x[k] * rows[j * n + k];
    return s;
  }
};

DualRows dual_rows(const PackedVectors& v, const IntegerMatrix& gram) {
  const std::size_t n = gram.rows();
  std::vector<std::int64_t> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!gram(i, j).fits_slong_p()) throw Error(Errc::TooLarge, "Gram entry exceeds 64 bits");
      g[i * n + j] = gram(i, j).get_si();
    }
  DualRows d{n, std::vector<std::int64_t>(v.size() * n)};
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto x = v[i];
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += x[k] * g[k * n + j];
      d.rows[i * n + j] = s;
    }
  }
  return d;
}

BigInt max_reduced_diagonal(const IntegerMatrix& gram) {
  IntegerMatrix r = lll_reduce(gram).gram;
  BigInt m = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) m = std::max(m, BigInt(r(i, i)));
  return m;
}

}  // namespace

std::vector<Sublattice> decompose(const Lattice& lattice) {
  const std::size_t n = lattice.rank();
  if (!is_positive_definite(lattice.gram)) throw Error(Errc::NotPositiveDefinite, "decompose");
  auto parent = std::make_shared<const Lattice>(lattice);

  const BigInt cap = max_reduced_diagonal(lattice.gram);
  BigInt bound = min_norm_and_kissing(lattice.gram).min_norm;
  for (;; bound += 2) {
    if (bound > cap) throw Error(Errc::Internal, "short vectors failed to span below the reduced diagonal");
    PackedVectors vecs = short_vectors_packed(lattice.gram, bound);
    DualRows dual = dual_rows(vecs, lattice.gram);

    // keep indecomposable vectors: x is decomposable iff b(x, y) = b(y, y) for a shorter y != 0
    std::vector<std::size_t> keep;
    std::size_t shorter_end = 0;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      while (vecs.norm(shorter_end) < vecs.norm(i)) ++shorter_end;
      bool decomposable = false;
      for (std::size_t j = 0; j < shorter_end && !decomposable; ++j)
        decomposable = dual.pair(vecs, i, j) == vecs.norm(j);
      if (!decomposable) keep.push_back(i);
    }

    HnfAccumulator span(n);
    for (std::size_t i : keep) {
      span.add(vecs.big_coords(i));
      if (span.is_full()) break;
    }
    if (!span.is_full()) continue;

    // connectivity under b(x, y) != 0, tracked through independent representatives per component
    struct Component {
      std::vector<std::size_t> reps;
      std::size_t first;
    };
    std::vector<Component> comps;
    for (std::size_t i : keep) {
      std::vector<std::size_t> touching;
      for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t r : comps[c].reps)
          if (dual.pair(vecs, i, r) != 0) {
            touching.push_back(c);
            break;
          }
      if (touching.empty()) {
        comps.push_back({{i}, i});
        continue;
      }
      Component& target = comps[touching.front()];
      for (std::size_t t = touching.size(); t-- > 1;) {
        Component& other = comps[touching[t]];
        target.reps.insert(target.reps.end(), other.reps.begin(), other.reps.end());
        target.first = std::min(target.first, other.first);
        comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(touching[t]));
      }
      if (target.reps.size() < n) {
        IntegerMatrix m(0, n);
        for (std::size_t r : target.reps) m.append_row(vecs.big_coords(r));
        std::size_t before = rank(m);
        m.append_row(vecs.big_coords(i));
        if (rank(m) > before) target.reps.push_back(i);
      }
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) { return a.first < b.first; });

    std::vector<Sublattice> out;
    if (comps.size() == 1) {
      out.emplace_back(parent, IntegerMatrix::identity(n));
      return out;
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
      // the summand is everything orthogonal to the other components
      IntegerMatrix others(0, n);
      for (std::size_t d = 0; d < comps.size(); ++d)
        if (d != c)
          for (std::size_t r : comps[d].reps) others.append_row(row_times(vecs.big_coords(r), lattice.gram));
      out.emplace_back(parent, integer_kernel(others.transpose()));
    }
    return out;
  }
}

// ---------------------------------------------------------------------------
// Binary forms

IntegerMatrix BinaryForm::gram() const {
  IntegerMatrix g(2, 2);
  g(0, 0) = a;
  g(0, 1) = b;
  g(1, 0) = b;
  g(1, 1) = c;
  return g;
}

BinaryForm BinaryForm::from_gram(const IntegerMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2) throw Error(Errc::DimensionMismatch, "binary form needs a 2x2 matrix");
  if (g(0, 1) != g(1, 0)) throw Error(Errc::InvalidInput, "binary form Gram is not symmetric");
  return {g(0, 0), g(0, 1), g(1, 1)};
}

BinaryReduction reduce_binary_with_witness(const BinaryForm& f) {
  if (f.a <= 0 || f.a * f.c - f.b * f.b <= 0) throw Error(Errc::NotPositiveDefinite, "binary form");
  BigInt a = f.a, b = f.b, c = f.c;
  IntegerMatrix w = IntegerMatrix::identity(2);
  for (;;) {
    if (a > c) {
      std::swap(a, c);
      w.swap_rows(0, 1);
    }
    BigInt num = 2 * b + a, den = 2 * a, q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (q == 0) break;
    c = c - 2 * q * b + q * q * a;
    b = b - q * a;
    for (std::size_t j = 0; j < 2; ++j) w(1, j) -= q * w(0, j);
  }
  if (b < 0) {
    b = -b;
    for (std::size_t j = 0; j < 2; ++j) w(1, j) = -w(1, j);
  }
  return {{a, b, c}, w};
}

BinaryForm reduce_binary(const BinaryForm& f) { return reduce_binary_with_witness(f).form; }

// ---------------------------------------------------------------------------
// Small-rank isometry search

std::optional<IntegerMatrix> find_isometry(const IntegerMatrix& g1, const IntegerMatrix& g2) {
  if (!g1.is_square() || !g2.is_square()) throw Error(Errc::NonSquare, "find_isometry");
  const std::size_t n = g1.rows();
  if (n > kMaxIsometryRank || g2.rows() > kMaxIsometryRank)
    throw Error(Errc::RankTooLarge, "isometry testing is limited to rank 8");
  if (g2.rows() != n) return std::nullopt;
  if (!is_positive_definite(g1) || !is_positive_definite(g2)) throw Error(Errc::NotPositiveDefinite, "find_isometry");
  if (det_bareiss(g1) != det_bareiss(g2)) return std::nullopt;

  LllResult red = lll_reduce(g1);
  const IntegerMatrix& target = red.gram;
  BigInt max_norm = 0;
  for (std::size_t i = 0; i < n; ++i) max_norm = std::max(max_norm, BigInt(target(i, i)));
  PackedVectors vecs = short_vectors_packed(g2, max_norm);
  DualRows dual = dual_rows(vecs, g2);

  std::vector<std::int64_t> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = target(i, j).get_si();
  std::vector<std::vector<std::size_t>> by_level(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < vecs.size(); ++k)
      if (vecs.norm(k) == t[i * n + i]) by_level[i].push_back(k);

  std::vector<std::size_t> chosen(n);
  std::function<bool(std::size_t)> search = [&](std::size_t level) -> bool {
    if (level == n) return true;
    for (std::size_t k : by_level[level]) {
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j) ok = dual.pair(vecs, k, chosen[j]) == t[j * n + level];
      if (!ok) continue;
      chosen[level] = k;
      if (search(level + 1)) return true;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;

  IntegerMatrix image(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = vecs.big_coords(chosen[i]);
    for (std::size_t j = 0; j < n; ++j) image(i, j) = x[j];
  }
  // image maps the reduced basis; undo the reduction transform
  IntegerMatrix inverse = hnf(red.transform).u;
  IntegerMatrix w = inverse * image;
  if (gram_of(w, g2) != g1) throw Error(Errc::Internal, "isometry witness check failed");
  return w;
}

bool is_isometric_small(const Lattice& a, const Lattice& b) { return find_isometry(a.gram, b.gram).has_value(); }

// ---------------------------------------------------------------------------
// Golay code

namespace {

bool is_quadratic_residue_23(int x) {
  for (int y = 1; y < 23; ++y)
    if ((y * y) % 23 == x) return true;
  return false;
}

std::vector<std::uint32_t> golay_spanning_words() {
  std::uint32_t base = 1u;  // {0} together with the nonzero squares
  for (int x = 1; x < 23; ++x)
    if (is_quadratic_residue_23(x)) base |= 1u << x;
  std::vector<std::uint32_t> words;
  for (int s = 0; s < 23; ++s) {
    std::uint32_t w = 0;
    for (int x = 0; x < 23; ++x)
      if (base >> x & 1u) w |= 1u << ((x + s) % 23);
    // parity extension keeps every word even
    if (std::popcount(w) % 2 != 0) w |= 1u << kGolayInfinity;
    words.push_back(w);
  }
  words.push_back((1u << 24) - 1);
  return words;
}

// Reduced row echelon basis over F_2, pivots in increasing coordinate order.
std::vector<std::uint32_t> echelon_f2(std::vector<std::uint32_t> words) {
  std::vector<std::uint32_t> basis;
  for (int bit = 0; bit < 24; ++bit) {
    auto it = std::find_if(words.begin(), words.end(), [&](std::uint32_t w) { return w >> bit & 1u; });
    if (it == words.end()) continue;
    std::uint32_t pivot = *it;
    words.erase(it);
    for (auto& w : words)
      if (w >> bit & 1u) w ^= pivot;
    for (auto& b : basis)
      if (b >> bit & 1u) b ^= pivot;
    basis.push_back(pivot);
  }
  return basis;
}

}  // namespace

IntegerMatrix build_golay_qr23() {
  auto basis = echelon_f2(golay_spanning_words());
  if (basis.size() != 12) throw Error(Errc::ConstructionSelfCheckFailed, "Golay code does not have dimension 12");
  IntegerMatrix g(12, 24);
  for (std::size_t i = 0; i < 12; ++i)
    for (int j = 0; j < 24; ++j) g(i, static_cast<std::size_t>(j)) = static_cast<long>(basis[i] >> j & 1u);
  return g;
}

std::vector<std::uint32_t> golay_codewords() {
  auto basis = echelon_f2(golay_spanning_words());
  std::vector<std::uint32_t> words;
  words.reserve(std::size_t{1} << basis.size());
  for (std::uint32_t mask = 0; mask < (1u << basis.size()); ++mask) {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (mask >> i & 1u) w ^= basis[i];
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  return words;
}

std::map<int, int> golay_weight_enumerator() {
  std::map<int, int> out;
  for (auto w : golay_codewords()) ++out[std::popcount(w)];
  return out;
}

std::array<int, 24> golay_shift_permutation() {
  std::array<int, 24> p{};
  for (int x = 0; x < 23; ++x) p[static_cast<std::size_t>(x)] = (x + 1) % 23;
  p[kGolayInfinity] = kGolayInfinity;
  return p;
}

std::array<int, 24> golay_doubling_permutation() {
  std::array<int, 24> p{};
  for (int x = 0; x < 23; ++x) p[static_cast<std::size_t>(x)] = (2 * x) % 23;
  p[kGolayInfinity] = kGolayInfinity;
  return p;
}

std::uint32_t permute_word(std::uint32_t word, const std::array<int, 24>& perm) {
  std::uint32_t out = 0;
  for (int i = 0; i < 24; ++i)
    if (word >> i & 1u) out |= 1u << perm[static_cast<std::size_t>(i)];
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

const NamedAutomorphism& CatalogEntry::automorphism(std::string_view name) const {
  for (const auto& a : automorphisms)
    if (a.name == name) return a;
  throw Error(Errc::UnknownName, "no automorphism named '" + std::string(name) + "' on " + lattice.label);
}

namespace {

// Row action R (x -> x * R) to the stored convention U = R^T.
NamedAutomorphism from_row_action(std::string name, const IntegerMatrix& r, unsigned order) {
  return {std::move(name), r.transpose(), order};
}

void check_automorphism(const Lattice& l, const NamedAutomorphism& a) {
  const IntegerMatrix& u = a.matrix;
  const IntegerMatrix id = IntegerMatrix::identity(l.rank());
  if (u.transpose() * l.gram * u != l.gram || u == id || matrix_power(u, a.order) != id)
    throw Error(Errc::ConstructionSelfCheckFailed, "named automorphism " + a.name + " on " + l.label);
}

// Row action of the reflection x -> x - b(x, r) r.
IntegerMatrix reflection(const IntegerMatrix& gram, std::span<const BigInt> root) {
  const std::size_t n = gram.rows();
  auto gr = row_times(root, gram);  // column G r^T, as G is symmetric
  IntegerMatrix r = IntegerMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) -= gr[i] * root[j];
  return r;
}

IntegerMatrix coxeter_element(const IntegerMatrix& gram, const std::vector<std::vector<BigInt>>& chain) {
  IntegerMatrix r = IntegerMatrix::identity(gram.rows());
  for (const auto& root : chain) r = r * reflection(gram, root);
  return r;
}

// First chain r_1..r_len of roots with b(r_i, r_{i+1}) = -1 and all other pairs orthogonal.
std::vector<std::vector<BigInt>> find_root_chain(const IntegerMatrix& gram, std::size_t len) {
  auto roots = vectors_with_norm(gram, 2);
  std::vector<std::size_t> chain;
  std::function<bool()> extend = [&]() -> bool {
    if (chain.size() == len) return true;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      bool ok = true;
      for (std::size_t j = 0; j < chain.size() && ok; ++j) {
        BigInt ip = bilinear(roots[k].coords, gram, roots[chain[j]].coords);
        ok = ip == (j + 1 == chain.size() ? -1 : 0);
      }
      if (!ok) continue;
      chain.push_back(k);
      if (extend()) return true;
      chain.pop_back();
    }
    return false;
  };
  if (!extend()) throw Error(Errc::ConstructionSelfCheckFailed, "no root chain found");
  std::vector<std::vector<BigInt>> out;
  for (std::size_t k : chain) out.push_back(roots[k].coords);
  return out;
}

IntegerMatrix block_diagonal(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

CatalogEntry build_a(std::size_t n) {
  CatalogEntry e{Lattice{cartan_a(n), "A" + std::to_string(n)}, {}};
  if (n == 2) e.automorphisms.push_back({"order3", IntegerMatrix{{0, -1}, {1, -1}}, 3});
  if (n == 6) {
    std::vector<std::vector<BigInt>> simple;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<BigInt> r(n);
      r[i] = 1;
      simple.push_back(r);
    }
    e.automorphisms.push_back(from_row_action("order7", coxeter_element(e.lattice.gram, simple), 7));
  }
  return e;
}

CatalogEntry build_e8() {
  CatalogEntry e{Lattice{cartan_e8(), "E8"}, {}};
  auto chain = find_root_chain(e.lattice.gram, 6);
  e.automorphisms.push_back(from_row_action("order7", coxeter_element(e.lattice.gram, chain), 7));
  return e;
}

CatalogEntry build_e8_e8(const CatalogEntry& e8) {
  CatalogEntry e{direct_sum(e8.lattice, e8.lattice), {}};
  e.lattice.label = "E8+E8";
  const auto& u = e8.automorphism("order7").matrix;
  e.automorphisms.push_back({"order7", block_diagonal(IntegerMatrix::identity(8), u), 7});
  return e;
}

struct CatalogStore {
  std::map<std::string, CatalogEntry, std::less<>> entries;
};

const CatalogStore& store() {
  static const CatalogStore s = [] {
    CatalogStore s;
    s.entries.emplace("A1", build_a(1));
    s.entries.emplace("A2", build_a(2));
    s.entries.emplace("A6", build_a(6));
    s.entries.emplace("E8", build_e8());
    s.entries.emplace("E8+E8", build_e8_e8(s.entries.at("E8")));
    for (auto& [name, entry] : s.entries)
      for (const auto& a : entry.automorphisms) check_automorphism(entry.lattice, a);
    return s;
  }();
  return s;
}

}  // namespace

IntegerMatrix cartan_a(std::size_t n) {
  IntegerMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return g;
}

IntegerMatrix cartan_e8() {
  // chain 1-3-4-5-6-7-8 with node 2 attached to node 4
  IntegerMatrix g(8, 8);
  const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  for (auto [a, b] : edges) {
    g(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)) = -1;
    g(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(a - 1)) = -1;
  }
  return g;
}

CatalogEntry build_leech_from_golay() {
  constexpr std::size_t n = 24;
  // generators in Z^24, scaled by sqrt(8)
  IntegerMatrix gens(0, n);
  auto add = [&](std::vector<BigInt> v) { gens.append_row(v); };
  {
    std::vector<BigInt> v(n);
    v[0] = 8;
    add(v);
  }
  for (std::size_t i = 1; i < n; ++i)
    for (int s : {1, -1}) {
      std::vector<BigInt> v(n);
      v[0] = 4;
      v[i] = 4 * s;
      add(v);
    }
  IntegerMatrix code = build_golay_qr23();
  for (std::size_t r = 0; r < code.rows(); ++r) {
    std::vector<BigInt> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = 2 * code(r, j);
    add(v);
  }
  {
    std::vector<BigInt> v(n, BigInt(1));
    v[kGolayInfinity] = -3;
    add(v);
  }
  IntegerMatrix basis = hnf_basis(gens);
  if (basis.rows() != n) throw Error(Errc::ConstructionSelfCheckFailed, "Leech generators do not have full rank");

  IntegerMatrix scaled = basis * basis.transpose();
  IntegerMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!mpz_divisible_ui_p(scaled(i, j).get_mpz_t(), 8))
        throw Error(Errc::ConstructionSelfCheckFailed, "Leech inner products are not integral");
      gram(i, j) = scaled(i, j) / 8;
    }
  auto report = validate_even_lattice(gram);
  if (!report.valid() || !report.unimodular)
    throw Error(Errc::ConstructionSelfCheckFailed, "Leech Gram is not even unimodular");
  if (count_vectors_with_norm(gram, 2) != 0) throw Error(Errc::ConstructionSelfCheckFailed, "Leech lattice has roots");

  CatalogEntry e{Lattice{gram, "Leech"}, {}};
  auto permutation_action = [&](const std::array<int, 24>& perm) {
    IntegerMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<BigInt> image(n);
      for (std::size_t j = 0; j < n; ++j) image[static_cast<std::size_t>(perm[j])] = basis(i, j);
      auto coeff = solve_integral(basis, image);
      if (!coeff) throw Error(Errc::ConstructionSelfCheckFailed, "permutation does not preserve the Leech lattice");
      for (std::size_t j = 0; j < n; ++j) r(i, j) = (*coeff)[j];
    }
    return r;
  };
  e.automorphisms.push_back(from_row_action("order23", permutation_action(golay_shift_permutation()), 23));
  e.automorphisms.push_back(from_row_action("order11", permutation_action(golay_doubling_permutation()), 11));
  for (const auto& a : e.automorphisms) check_automorphism(e.lattice, a);
  return e;
}

const CatalogEntry& catalog(std::string_view name) {
  if (name == "Leech") {
    static const CatalogEntry leech = build_leech_from_golay();
    return leech;
  }
  const auto& s = store();
  auto it = s.entries.find(name);
  if (it == s.entries.end()) throw Error(Errc::UnknownName, "unknown catalog lattice '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> catalog_names() { return {"A1", "A2", "A6", "E8", "E8+E8", "Leech"}; }

}  // namespace thetacong
