#include "thetacong/io.hpp"

#include <fstream>
#include <sstream>

namespace thetacong::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidInput, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object()) bad("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field \"") + name + "\"");
  return *it;
}

bool is_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

json witness_to_json(const Witness& w) {
  json j{{"twoT", matrix_to_json(w.form.two_t())}, {"count", bigint_to_json(w.count)}, {"det2T", bigint_to_json(w.det_two_t)}};
  if (w.reference) j["reference"] = bigint_to_json(*w.reference);
  return j;
}

}  // namespace

json bigint_to_json(const BigInt& v) { return v.get_str(); }

BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<unsigned long>()) : BigInt(j.get<long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (!is_decimal(s)) bad("not a decimal integer: " + s);
    return BigInt(s);
  }
  bad("expected an integer");
}

json matrix_to_json(const IntegerMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const BigInt& v = m(i, k);
      if (v.fits_slong_p())
        row.push_back(v.get_si());
      else
        row.push_back(v.get_str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

IntegerMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) bad("matrix rows must be arrays");
    if (i == 0)
      cols = j[i].size();
    else if (j[i].size() != cols)
      bad("matrix rows have different lengths");
  }
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = bigint_from_json(j[i][k]);
  return m;
}

json lattice_to_json(const Lattice& lattice) {
  json j;
  if (!lattice.label.empty()) j["label"] = lattice.label;
  j["gram"] = matrix_to_json(lattice.gram);
  return j;
}

Lattice lattice_from_json(const json& j) {
  IntegerMatrix gram = matrix_from_json(field(j, "gram"));
  std::string label;
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) bad("label must be a string");
    label = it->get<std::string>();
  }
  return make_lattice(std::move(gram), std::move(label));
}

json automorphism_to_json(const IntegerMatrix& matrix, unsigned long order) {
  return json{{"matrix", matrix_to_json(matrix)}, {"order", order}};
}

AutomorphismFile automorphism_from_json(const json& j) {
  AutomorphismFile a;
  a.matrix = matrix_from_json(field(j, "matrix"));
  const json& order = field(j, "order");
  if (!order.is_number_integer() || order.get<long>() <= 0) bad("order must be a positive integer");
  a.order = order.get<unsigned long>();
  return a;
}

json table_to_json(const ThetaTable& table) {
  json entries = json::array();
  for (const auto& [f, c] : table.entries) entries.push_back({{"twoT", matrix_to_json(f.two_t())}, {"count", bigint_to_json(c)}});
  return json{{"label", table.label}, {"degree", table.degree}, {"diag_bound", table.diag_bound}, {"entries", std::move(entries)}};
}

ThetaTable table_from_json(const json& j) {
  ThetaTable t;
  if (auto it = j.find("label"); it != j.end() && it->is_string()) t.label = it->get<std::string>();
  t.degree = field(j, "degree").get<std::size_t>();
  t.diag_bound = field(j, "diag_bound").get<long>();
  for (const auto& e : field(j, "entries")) t.entries.emplace(SemiIntegralForm(matrix_from_json(field(e, "twoT"))), bigint_from_json(field(e, "count")));
  return t;
}

json report_to_json(const CongruenceReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(witness_to_json(w));
  return json{{"claim", r.claim},
              {"p", r.p},
              {"degree", r.degree},
              {"diag_bound", r.diag_bound},
              {"range", "all T of degree " + std::to_string(r.degree) + " with t_ii <= " + std::to_string(r.diag_bound)},
              {"holds", r.holds},
              {"forms_checked", r.forms_checked},
              {"witnesses", std::move(witnesses)}};
}

CongruenceReport report_from_json(const json& j) {
  CongruenceReport r;
  try {
    r.claim = field(j, "claim").get<std::string>();
    r.p = field(j, "p").get<unsigned long>();
    r.degree = field(j, "degree").get<std::size_t>();
    r.diag_bound = field(j, "diag_bound").get<long>();
    r.holds = field(j, "holds").get<bool>();
    r.forms_checked = field(j, "forms_checked").get<std::size_t>();
  } catch (const json::exception& e) {
    bad(e.what());
  }
  for (const auto& w : field(j, "witnesses")) {
    Witness x{SemiIntegralForm(matrix_from_json(field(w, "twoT"))), bigint_from_json(field(w, "count")),
              bigint_from_json(field(w, "det2T")), std::nullopt};
    if (auto it = w.find("reference"); it != w.end()) x.reference = bigint_from_json(*it);
    r.witnesses.push_back(std::move(x));
  }
  return r;
}

json convolution_to_json(const SemiIntegralForm& t, const ConvolutionResult& r) {
  return json{{"claim", "convolution"},
              {"twoT", matrix_to_json(t.two_t())},
              {"direct", bigint_to_json(r.direct)},
              {"convolved", bigint_to_json(r.convolved)},
              {"splittings", r.splittings},
              {"holds", r.holds()}};
}

json fixed_report_to_json(const FixedSplitReport& r, const IntegerMatrix& reduced_m0_gram) {
  json chain;
  for (int i = 0; i < 2; ++i) {
    chain.push_back({{"part", i},
                     {"scaled_projection_in_part", r.chain.scaled_projection_in_part[static_cast<std::size_t>(i)]},
                     {"part_in_projection", r.chain.part_in_projection[static_cast<std::size_t>(i)]},
                     {"projection_in_dual", r.chain.projection_in_dual[static_cast<std::size_t>(i)]}});
  }
  json components = json::array();
  for (const auto& [rank, det] : r.components) components.push_back({{"rank", rank}, {"det", bigint_to_json(det)}});
  return json{{"p", r.p},
              {"rank", r.rank},
              {"m0", r.m0},
              {"m1", r.m1},
              {"det_lattice", bigint_to_json(r.det_lattice)},
              {"det_m0", bigint_to_json(r.det_m0)},
              {"det_m1", bigint_to_json(r.det_m1)},
              {"m0_gram", matrix_to_json(r.m0_gram)},
              {"m0_gram_reduced", matrix_to_json(reduced_m0_gram)},
              {"split_index", bigint_to_json(r.split_index)},
              {"projection_index", bigint_to_json(r.projection_index)},
              {"m1_divisible", r.m1_divisible},
              {"projections_split", r.projections_split},
              {"chain", std::move(chain)},
              {"chain_ok", r.chain.all_hold()},
              {"is_orthogonal_split", r.is_orthogonal_split},
              {"det_m0_divisible_by_p", r.det_m0_divisible_by_p},
              {"disjunction_holds", r.disjunction_holds},
              {"components", std::move(components)},
              {"exception_applies", r.exception_applies},
              {"theorem_holds", r.theorem_holds},
              {"holds", r.all_hold()}};
}

json components_to_json(const std::vector<Sublattice>& components) {
  json list = json::array();
  for (const auto& c : components)
    list.push_back({{"rank", c.rank()}, {"det", bigint_to_json(c.determinant())}, {"basis", matrix_to_json(c.coords())}});
  return json{{"count", components.size()}, {"components", std::move(list)}};
}

json validation_to_json(const ValidationReport& r) {
  json j{{"square", r.square},
         {"symmetric", r.symmetric},
         {"even_diagonal", r.even_diagonal},
         {"positive_definite", r.positive_definite},
         {"unimodular", r.unimodular},
         {"valid", r.valid()}};
  if (r.determinant) j["det"] = bigint_to_json(*r.determinant);
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace thetacong::io
