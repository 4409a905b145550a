// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.
// --heavy adds the Leech degree-2 orbit congruence to criterion 6.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>

#include "../support/oracles.hpp"
#include "thetacong/enumeration.hpp"
#include "thetacong/fixpoint.hpp"
#include "thetacong/theta.hpp"

using namespace thetacong;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

Automorphism automorphism_of(const std::string& lattice, const std::string& name) {
  const auto& e = catalog(lattice);
  const auto& a = e.automorphism(name);
  return validate_automorphism(e.lattice, a.matrix, a.order);
}

std::string str(const BigInt& v) { return v.get_str(); }

Outcome catalog_integrity() {
  Outcome o;
  const auto& e8 = catalog("E8").lattice;
  auto ve = validate_even_lattice(e8.gram);
  auto me = min_norm_and_kissing(e8.gram);
  o.require(ve.valid() && ve.unimodular, "E8 even unimodular");
  o.require(me.min_norm == 2 && me.count == 240, "E8 min 2, kissing 240");

  const auto& leech = catalog("Leech").lattice;
  auto vl = validate_even_lattice(leech.gram);
  auto ml = min_norm_and_kissing(leech.gram);
  o.require(vl.valid() && vl.unimodular, "Leech even unimodular");
  o.require(ml.min_norm == 4 && ml.count == 196560, "Leech min 4, kissing 196560");

  std::map<int, int> expected{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
  o.require(golay_weight_enumerator() == expected, "Golay weight enumerator");
  o.note("E8 kissing " + str(me.count) + ", Leech min " + str(ml.min_norm) + " kissing " + str(ml.count));
  return o;
}

Outcome leech_order23() {
  Outcome o;
  const auto& leech = catalog("Leech").lattice;
  Sublattice m0 = fixed_sublattice(leech, automorphism_of("Leech", "order23"));
  BigInt det = m0.determinant();
  o.require(m0.rank() == 2, "m0 = 2");
  o.require(det == 23, "det M0 = 23");
  if (m0.rank() == 2) {
    IntegerMatrix reduced = reduce_binary(BinaryForm::from_gram(m0.gram())).gram();
    o.require(reduced == IntegerMatrix{{4, 1}, {1, 6}}, "reduced Gram [[4,1],[1,6]]");
    o.note("m0 2, det " + str(det) + ", reduced [[" + str(reduced(0, 0)) + "," + str(reduced(0, 1)) + "],[" + str(reduced(1, 0)) + "," +
           str(reduced(1, 1)) + "]]");
  }
  return o;
}

Outcome leech_order11() {
  Outcome o;
  const auto& leech = catalog("Leech").lattice;
  Sublattice m0 = fixed_sublattice(leech, automorphism_of("Leech", "order11"));
  o.require(m0.rank() == 4, "m0 = 4");
  o.require(m0.determinant() == 121, "det M0 = 121");
  Lattice ozeki = make_lattice(IntegerMatrix{{4, 2, 1, 0}, {2, 4, 1, 1}, {1, 1, 4, 2}, {0, 1, 2, 4}});
  o.require(m0.rank() == 4 && is_isometric_small(m0.as_lattice(), ozeki), "isometric to the Ozeki form");
  o.note("m0 " + std::to_string(m0.rank()) + ", det " + str(m0.determinant()));
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  std::size_t pairs = 0;
  for (const auto& name : catalog_names()) {
    const auto& e = catalog(name);
    for (const auto& a : e.automorphisms) {
      Automorphism s = validate_automorphism(e.lattice, a.matrix, a.order);
      FixedSplitReport r = splitting_check(e.lattice, s);
      std::string tag = name + "/" + a.name;
      o.require(r.m0 + r.m1 == r.rank, tag + " ranks");
      o.require(r.projections_split, tag + " splitting index bookkeeping");
      o.require(r.chain.all_hold(), tag + " inclusion chain");
      o.require(r.m1_divisible, tag + " (p-1) | m1");
      o.require(r.disjunction_holds, tag + " discriminant disjunction");
      o.require(r.all_hold(), tag + " report");
      ++pairs;
    }
  }
  o.require(pairs >= 4, "at least four catalog pairs");
  o.note(std::to_string(pairs) + " pairs");
  return o;
}

Outcome e8_theta_operator() {
  Outcome o;
  ThetaTable t = theta_table(catalog("E8").lattice, 2, 3);
  CongruenceReport op = congruence_check_theta_op(t, 7);
  CongruenceReport sing = singularity_check(t, 7);
  o.require(op.holds, "7 | det(2T) A(E8, T)");
  o.require(!sing.holds, "a pd T with 7 not dividing A(E8, T)");
  o.note(std::to_string(op.forms_checked) + " pd forms, " + std::to_string(sing.witnesses.size()) + " not divisible by 7");
  return o;
}

Outcome orbit_congruence(bool heavy) {
  Outcome o;
  const auto& e8 = catalog("E8").lattice;
  Automorphism s7 = automorphism_of("E8", "order7");
  for (std::size_t n = 1; n <= 2; ++n) {
    CongruenceReport r = fixed_congruence_check(e8, s7, n, 3);
    o.require(r.holds, "E8 n = " + std::to_string(n));
    o.note("E8 n=" + std::to_string(n) + " " + std::to_string(r.forms_checked) + " forms");
  }
  const auto& leech = catalog("Leech").lattice;
  Automorphism s23 = automorphism_of("Leech", "order23");
  CongruenceReport r1 = fixed_congruence_check(leech, s23, 1, 3);
  o.require(r1.holds, "Leech n = 1");
  o.note("Leech n=1 " + std::to_string(r1.forms_checked) + " forms");
  if (!heavy) {
    o.note("Leech n=2 skipped (--heavy)");
    return o;
  }
  RepresentationCounter counter(leech.gram);
  ThetaTable lt = theta_table(counter, "Leech", 2, 2);
  ThetaTable mt = theta_table(fixed_sublattice(leech, s23).as_lattice(), 2, 2);
  CongruenceReport r2 = fixed_congruence_check(lt, mt, 23);
  o.require(r2.holds, "Leech n = 2");
  std::size_t diag22 = 0;
  for (const auto& [f, c] : lt.entries) {
    if (f.diagonal(0) != 2 || f.diagonal(1) != 2 || !f.is_positive_definite()) continue;
    if (f.det_two_t() % 23 == 0) continue;
    o.require(c % 23 == 0, "23 | A(Leech, T) at det(2T) = " + str(f.det_two_t()));
    ++diag22;
  }
  o.require(diag22 > 0, "diagonal (2,2) forms present");
  o.note("Leech n=2 " + std::to_string(r2.forms_checked) + " forms, " + std::to_string(diag22) + " with diagonal (2,2)");
  return o;
}

Outcome e8_singularity() {
  Outcome o;
  CongruenceReport r = singularity_check(catalog("E8").lattice, 7, 3, 2);
  o.require(r.holds, "7 | A(E8, T) for pd T of degree 3");
  o.require(r.forms_checked > 0, "pd forms in range");
  o.note(std::to_string(r.forms_checked) + " pd forms");
  return o;
}

Outcome convolution_example() {
  Outcome o;
  const auto& e8 = catalog("E8").lattice;
  const auto& leech = catalog("Leech").lattice;
  SemiIntegralForm t(e8.gram);
  BigInt oracle_value = 1;
  for (auto [prime, power] : {std::pair{2, 14}, {3, 5}, {5, 2}, {7, 1}})
    for (int k = 0; k < power; ++k) oracle_value *= prime;
  BigInt a = representation_number(e8, t);
  o.require(a == oracle_value, "A(E8, Gram(E8)) = 2^14 3^5 5^2 7");
  o.require(oracle_value == 696729600, "oracle value");
  ConvolutionResult c = convolution_check_form(e8, leech, t);
  o.require(c.holds(), "direct count equals convolution");
  o.require(c.direct == oracle_value, "A(E8 + Leech, Gram(E8)) = 696729600");
  o.require(c.splittings == 1, "only the split (T, 0) contributes");
  o.require(oracle_value % 13 != 0, "13 does not divide the coefficient");
  o.note("A = " + str(a) + ", splittings " + std::to_string(c.splittings));
  return o;
}

Outcome property_suites() {
  Outcome o;
  oracle::Tally rep = oracle::representation_properties(9001, 200);
  oracle::Tally lin = oracle::linalg_properties(9002, 1000);
  oracle::Tally iota = oracle::iota_properties(9003, 1000);
  for (const auto* t : {&rep, &lin, &iota})
    for (const auto& f : t->failures) o.require(false, f);
  o.require(rep.cases >= 200 && lin.cases >= 1000 && iota.cases >= 1000, "case counts");
  o.note(std::to_string(rep.cases) + " representation, " + std::to_string(lin.cases) + " linear algebra, " + std::to_string(iota.cases) +
         " iota cases");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool heavy = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--heavy") == 0) {
      heavy = true;
    } else {
      std::fprintf(stderr, "usage: %s [--heavy]\n", argv[0]);
      return 2;
    }
  }
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"catalog integrity", catalog_integrity},
      {"Leech order 23 fixed lattice", leech_order23},
      {"Leech order 11 fixed lattice", leech_order11},
      {"splitting lemmas on catalog pairs", lemma_suite},
      {"E8 theta operator mod 7, degree 2", e8_theta_operator},
      {"orbit congruence", [heavy] { return orbit_congruence(heavy); }},
      {"E8 singular mod 7 in degree 3", e8_singularity},
      {"E8 + Leech coefficient by convolution", convolution_example},
      {"property suites", property_suites},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("criterion %zu %s: %s (%s, %.1fs)\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
