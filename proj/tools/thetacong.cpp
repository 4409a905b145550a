// Command-line front end. Exit status: 0 when every checked statement holds,
// 1 when a checked statement fails, 2 on usage or input errors.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thetacong/io.hpp"

namespace fs = std::filesystem;
using namespace thetacong;
using io::json;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    io::write_json_file(out_path, j);
}

Lattice load_lattice(const std::string& path) {
  Lattice l = io::lattice_from_json(io::read_json_file(path));
  if (l.label.empty()) l.label = fs::path(path).stem().string();
  return l;
}

Automorphism load_automorphism(const Lattice& lattice, const std::string& path) {
  io::AutomorphismFile a = io::automorphism_from_json(io::read_json_file(path));
  return validate_automorphism(lattice, a.matrix, a.order);
}

IntegerMatrix reduced_gram(const IntegerMatrix& g) {
  if (g.rows() == 2) return reduce_binary(BinaryForm::from_gram(g)).gram();
  if (g.rows() == 0) return g;
  return lll_reduce(g).gram;
}

struct Options {
  std::string name, lattice, automorphism, out, out_dir, aut_name, other, form;
  long prime = 0;
  long degree = 0;
  long bound = 2;
  bool singular = false;
  bool list = false;
  bool heavy = false;
};

// Degree >= 2 tables on rank >= 16 lattices run for minutes.
constexpr std::size_t kHeavyRank = 16;

void check_scale(std::size_t rank, std::size_t degree, const Options& o) {
  if (!o.heavy && rank >= kHeavyRank && degree >= 2)
    throw Error(Errc::InvalidInput, "degree " + std::to_string(degree) + " on rank " + std::to_string(rank) + " needs --heavy");
}

int run_catalog(const Options& o) {
  if (o.list) {
    emit(json(catalog_names()), o.out);
    return kHolds;
  }
  if (o.name.empty()) throw Error(Errc::InvalidInput, "catalog needs a name or --list");
  const CatalogEntry& e = catalog(o.name);
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    io::write_json_file(fs::path(o.out_dir) / (o.name + ".json"), io::lattice_to_json(e.lattice));
    for (const auto& a : e.automorphisms)
      io::write_json_file(fs::path(o.out_dir) / (o.name + "." + a.name + ".json"), io::automorphism_to_json(a.matrix, a.order));
  }
  if (!o.aut_name.empty()) {
    const auto& a = e.automorphism(o.aut_name);
    emit(io::automorphism_to_json(a.matrix, a.order), o.out);
  } else if (o.out_dir.empty() || !o.out.empty()) {
    emit(io::lattice_to_json(e.lattice), o.out);
  }
  return kHolds;
}

int run_validate(const Options& o) {
  json doc = io::read_json_file(o.lattice);
  IntegerMatrix gram = io::matrix_from_json(doc.contains("gram") ? doc["gram"] : json());
  ValidationReport r = validate_even_lattice(gram);
  json out = io::validation_to_json(r);
  bool ok = r.valid();
  if (ok && !o.automorphism.empty()) {
    io::AutomorphismFile a = io::automorphism_from_json(io::read_json_file(o.automorphism));
    Lattice l = make_lattice(gram);
    try {
      validate_automorphism(l, a.matrix, a.order);
      out["automorphism"] = {{"valid", true}, {"order", a.order}};
    } catch (const Error& e) {
      out["automorphism"] = {{"valid", false}, {"error", std::string(to_string(e.code()))}};
      ok = false;
    }
  }
  emit(out, o.out);
  return ok ? kHolds : kFails;
}

int run_decompose(const Options& o) {
  Lattice l = load_lattice(o.lattice);
  emit(io::components_to_json(decompose(l)), o.out);
  return kHolds;
}

int run_fixed(const Options& o) {
  Lattice l = load_lattice(o.lattice);
  Automorphism s = load_automorphism(l, o.automorphism);
  FixedSplitReport r = splitting_check(l, s);
  emit(io::fixed_report_to_json(r, reduced_gram(r.m0_gram)), o.out);
  return r.all_hold() ? kHolds : kFails;
}

int run_theta(const Options& o) {
  if (o.degree < 1) throw Error(Errc::InvalidInput, "--degree must be at least 1");
  if (o.bound < 0) throw Error(Errc::InvalidInput, "--bound must be non-negative");
  Lattice l = load_lattice(o.lattice);
  check_scale(l.rank(), static_cast<std::size_t>(o.degree), o);
  emit(io::table_to_json(theta_table(l, static_cast<std::size_t>(o.degree), o.bound)), o.out);
  return kHolds;
}

int run_opcheck(const Options& o) {
  if (o.bound < 0) throw Error(Errc::InvalidInput, "--bound must be non-negative");
  Lattice l = load_lattice(o.lattice);
  json reports = json::array();
  bool holds = true;
  auto add = [&](json r) {
    holds = holds && r["holds"].get<bool>();
    reports.push_back(std::move(r));
  };

  if (!o.other.empty()) {
    Lattice other = load_lattice(o.other);
    if (!o.form.empty()) {
      SemiIntegralForm t(io::matrix_from_json(io::read_json_file(o.form)));
      add(io::convolution_to_json(t, convolution_check_form(l, other, t)));
    } else {
      if (o.degree < 1) throw Error(Errc::InvalidInput, "--degree must be at least 1");
      check_scale(l.rank() + other.rank(), static_cast<std::size_t>(o.degree), o);
      add(io::report_to_json(convolution_check(l, other, static_cast<std::size_t>(o.degree), o.bound)));
    }
    emit(json{{"holds", holds}, {"reports", reports}}, o.out);
    return holds ? kHolds : kFails;
  }

  std::optional<Automorphism> sigma;
  unsigned long p = o.prime > 0 ? static_cast<unsigned long>(o.prime) : 0;
  long degree = o.degree;
  if (!o.automorphism.empty()) {
    sigma = load_automorphism(l, o.automorphism);
    if (p == 0) p = sigma->order;
    if (degree == 0) degree = std::max<long>(1, static_cast<long>(fixed_sublattice(l, *sigma).rank()));
  }
  if (o.prime < 0) throw Error(Errc::InvalidInput, "--prime must be positive");
  if (p == 0) throw Error(Errc::InvalidInput, "--prime is required without an automorphism");
  if (!is_odd_prime(p)) throw Error(Errc::NotOddPrime, std::to_string(p) + " is not an odd prime");
  if (degree < 1) throw Error(Errc::InvalidInput, "--degree must be at least 1");
  const auto n = static_cast<std::size_t>(degree);
  check_scale(l.rank(), n, o);

  ThetaTable table = theta_table(l, n, o.bound);
  add(io::report_to_json(o.singular ? singularity_check(table, p) : congruence_check_theta_op(table, p)));
  if (sigma) {
    if (sigma->order != p) throw Error(Errc::InvalidInput, "--prime differs from the automorphism order");
    Sublattice m0 = fixed_sublattice(l, *sigma);
    RepresentationCounter fixed_counter(m0.gram());
    add(io::report_to_json(fixed_congruence_check(table, theta_table(fixed_counter, "fixed", n, o.bound), p)));
  }
  emit(json{{"holds", holds}, {"reports", reports}}, o.out);
  return holds ? kHolds : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Even lattices, prime-order automorphisms and theta series congruences"};
  app.require_subcommand(1);
  Options o;

  auto* cat = app.add_subcommand("catalog", "Emit a built-in lattice or one of its automorphisms");
  cat->add_option("name", o.name, "A1, A2, A6, E8, E8+E8 or Leech");
  cat->add_option("--aut", o.aut_name, "Emit the named automorphism instead of the lattice");
  cat->add_option("--out-dir", o.out_dir, "Write the lattice and all its automorphisms into this directory");
  cat->add_flag("--list", o.list, "List catalog names");
  cat->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* val = app.add_subcommand("validate", "Check a Gram matrix (and optionally an automorphism)");
  val->add_option("lattice", o.lattice)->required();
  val->add_option("automorphism", o.automorphism);
  val->add_option("-o,--out", o.out);

  auto* dec = app.add_subcommand("decompose", "Indecomposable orthogonal summands");
  dec->add_option("lattice", o.lattice)->required();
  dec->add_option("-o,--out", o.out);

  auto* fix = app.add_subcommand("fixed", "Fixed sublattice, splitting lemmas and determinant statement");
  fix->add_option("lattice", o.lattice)->required();
  fix->add_option("automorphism", o.automorphism)->required();
  fix->add_option("-o,--out", o.out);

  auto* th = app.add_subcommand("theta", "Theta coefficient table A(L, T) for t_ii <= bound");
  th->add_option("lattice", o.lattice)->required();
  th->add_option("-n,--degree", o.degree)->required();
  th->add_option("-D,--bound", o.bound)->required();
  th->add_option("-o,--out", o.out);
  th->add_flag("--heavy", o.heavy, "Allow degree >= 2 on lattices of rank >= 16");

  auto* op = app.add_subcommand("opcheck", "Mod-p congruence checks on theta coefficients");
  op->add_option("lattice", o.lattice)->required();
  op->add_option("automorphism", o.automorphism, "Defaults the prime to its order and the degree to rank M_0");
  op->add_option("-p,--prime", o.prime);
  op->add_option("-n,--degree", o.degree);
  op->add_option("-D,--bound", o.bound, "Diagonal bound (default 2)");
  op->add_flag("--singular", o.singular, "Check p | A(L, T) instead of p | det(2T) A(L, T)");
  op->add_option("--convolve", o.other, "Check the orthogonal-sum identity against this second lattice");
  op->add_option("--at", o.form, "With --convolve: a single 2T matrix file instead of the whole range");
  op->add_option("-o,--out", o.out);
  op->add_flag("--heavy", o.heavy, "Allow degree >= 2 on lattices of rank >= 16");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*cat) return run_catalog(o);
    if (*val) return run_validate(o);
    if (*dec) return run_decompose(o);
    if (*fix) return run_fixed(o);
    if (*th) return run_theta(o);
    if (*op) return run_opcheck(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
