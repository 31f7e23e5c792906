#include "stringtop/cli.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "stringtop/io.hpp"
#include "stringtop/string_ops.hpp"

namespace stringtop::cli {

using nlohmann::json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Fixed-width table: first column left-aligned, the rest right-aligned.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], display_width(r[i]));
      }
    std::ostringstream out;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const std::string pad(width[i] - display_width(r[i]), ' ');
        line += i == 0 ? r[i] + pad : "  " + pad + r[i];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << "\n";
    }
    return out.str();
  }

 private:
  static std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
      if ((c & 0xC0) != 0x80) ++n;
    return n;
  }

  std::vector<std::vector<std::string>> rows_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json betti_json(const std::map<int, std::size_t>& betti) {
  json out = json::object();
  for (const auto& [p, b] : betti) out[std::to_string(p)] = b;
  return out;
}

void set_degrees(json& doc, const std::map<int, std::size_t>& betti) {
  json degrees = json::array(), values = json::array();
  for (const auto& [p, b] : betti) {
    degrees.push_back(p);
    values.push_back(b);
  }
  doc["degrees"] = degrees;
  doc["betti"] = values;
}

std::string betti_table(const std::map<int, std::size_t>& betti) {
  Table t({"degree", "dim"});
  for (const auto& [p, b] : betti) t.row({std::to_string(p), std::to_string(b)});
  return t.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Context {
  const CommandOptions& options;
  AlgebraFile file;
  json doc;
  std::ostringstream text;
  int exit_code = kOk;

  const FinitePdAlgebra& pd() const {
    if (!file.pd) throw UsageError(options.command + " needs a finite-pd algebra, got " + to_string(file.kind));
    return *file.pd;
  }

  FreeCdga sullivan_or_bg() const {
    if (file.sullivan) return *file.sullivan;
    if (file.bg) return bg_model(*file.bg);
    throw UsageError(options.command + " needs a sullivan or bg algebra, got " + to_string(file.kind));
  }

  const BGPresentation& bg() const {
    if (!file.bg) throw UsageError(options.command + " needs a bg presentation, got " + to_string(file.kind));
    return *file.bg;
  }

  /// Finite algebras fall back to their top degree plus `shift`; infinite
  /// models need an explicit truncation.
  int max_degree(int finite_default) {
    int n = 0;
    if (options.max_degree) {
      n = *options.max_degree;
    } else if (file.truncation) {
      n = *file.truncation;
    } else if (file.pd) {
      n = finite_default;
    } else {
      throw UsageError("--max-degree is required for " + to_string(file.kind) + " input");
    }
    if (n < 0) throw UsageError("--max-degree must be non-negative");
    doc["max_degree"] = n;
    return n;
  }

  void header(const std::string& what) {
    text << what << ": " << (file.name.empty() ? options.input.filename().string() : file.name) << " ("
         << to_string(file.kind) << ")\n";
  }

  void verdict(const std::string& line, bool pass) {
    text << "verdict: " << line << "\n";
    doc["verdicts"]["summary"] = line;
    doc["verdicts"]["pass"] = pass;
    if (!pass) exit_code = kVerdictFail;
  }
};

void cmd_check_pd(Context& c) {
  const auto& a = c.pd();
  c.header("check-pd");
  const auto v = check_poincare_duality(a);
  std::map<int, std::size_t> dims;
  for (const auto& b : a.algebra.basis()) dims[b.degree] += 1;
  set_degrees(c.doc, dims);
  c.doc["verdicts"]["failed_axiom"] = v.pass ? json(nullptr) : json(v.failed_axiom);
  if (!v.pass && v.failed_axiom == "(ii)") {
    c.doc["verdicts"]["failing_degree"] = v.failing_degree;
    c.doc["verdicts"]["rank_defect"] = v.rank_defect;
  }
  c.doc["verdicts"]["message"] = v.message;
  c.text << "formal dimension: " << a.dimension << "\n" << v.message << "\n";
  c.verdict(v.pass ? "Poincare duality holds" : "fails axiom " + v.failed_axiom, v.pass);
}

void cmd_betti(Context& c) {
  c.header("betti");
  std::map<int, std::size_t> betti;
  if (c.file.pd) {
    const auto& alg = c.file.pd->algebra;
    const int n = c.max_degree(alg.top_degree());
    const auto h = homology(alg.complex(), 0, std::min(n, alg.top_degree()));
    for (int p = 0; p <= n; ++p) betti[p] = p <= alg.top_degree() ? h.betti(p) : 0;
  } else {
    const FreeCdga model = c.sullivan_or_bg();
    const int n = c.max_degree(0);
    const auto h = keyed_homology(model.complex(n + 1), 0, n, false);
    for (int p = 0; p <= n; ++p) betti[p] = h.betti(p);
  }
  set_degrees(c.doc, betti);
  c.doc["tables"]["betti"] = betti_json(betti);
  c.text << betti_table(betti);
}

void cmd_loop_betti(Context& c) {
  c.header("loop-betti");
  LoopHomologyTable t;
  if (c.file.pd) {
    t = loop_betti_hochschild(c.file.pd->algebra, c.max_degree(c.file.pd->dimension));
  } else {
    t = loop_betti_sullivan(c.sullivan_or_bg(), c.max_degree(0));
  }
  const std::string prov = t.provenance == Provenance::Sullivan ? "sullivan" : "hochschild";
  set_degrees(c.doc, t.betti);
  c.doc["tables"]["betti"] = betti_json(t.betti);
  c.doc["tables"]["provenance"] = prov;
  json reps = json::object();
  Table table({"degree", "dim", "representatives"});
  for (const auto& [p, b] : t.betti) {
    reps[std::to_string(p)] = t.representatives[p];
    std::string joined;
    for (const auto& r : t.representatives[p]) joined += (joined.empty() ? "" : "; ") + r;
    table.row({std::to_string(p), std::to_string(b), joined});
  }
  c.doc["tables"]["representatives"] = reps;
  c.text << "H^*(LM) via the " << prov << " model\n" << table.str();
}

json combination_json(const Combination<std::string>& x) {
  json out = json::object();
  for (const auto& [k, v] : x) out[k] = v.get_str();
  return out;
}

std::string format_combination(const Combination<std::string>& x) {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, v] : x) {
    if (sgn(v) < 0)
      out += first ? "-" : " - ";
    else if (!first)
      out += " + ";
    const Rational a = abs(v);
    out += a == 1 ? k : a.get_str() + "*" + k;
    first = false;
  }
  return out;
}

void cmd_loop_product(Context& c) {
  const auto& a = c.pd();
  c.header("loop-product");
  const int n = c.max_degree(2 * a.dimension);
  const auto p = dual_loop_product(a, n);
  set_degrees(c.doc, p.betti);
  c.doc["tables"]["betti"] = betti_json(p.betti);
  c.doc["tables"]["shift"] = p.table.shift;
  json entries = json::array();
  Table t({"b", "c", "b.c"});
  for (const auto& [pair, value] : p.table.entries) {
    entries.push_back({{"left", pair.first}, {"right", pair.second}, {"value", combination_json(value)}});
    t.row({pair.first, pair.second, format_combination(value)});
  }
  c.doc["tables"]["product"] = entries;
  json degrees = json::object();
  for (const auto& [label, d] : p.table.degrees) degrees[label] = d;
  c.doc["tables"]["class_degrees"] = degrees;
  c.doc["verdicts"]["nontrivial"] = p.nontrivial;
  c.text << "loop product on H_*(LM), degree " << p.table.shift << "; [p:i]# is dual to the i-th class of H^p(CH)\n"
         << t.str();
  c.text << "nonzero products: " << p.table.entries.size() << " (classes through degree " << n << ")\n";
}

void cmd_loop_coproduct(Context& c) {
  const auto& a = c.pd();
  c.header("loop-coproduct");
  const int n = c.max_degree(2 * a.dimension);
  const auto v = loop_coproduct_psi(a, n);
  c.doc["tables"]["psi_rank"] = betti_json(v.psi_rank);
  c.doc["tables"]["adjoined"] = v.adjoined;
  c.doc["verdicts"]["euler_characteristic"] = v.euler_characteristic;
  c.doc["verdicts"]["trivial"] = v.trivial;
  c.doc["verdicts"]["closed_form_holds"] = v.closed_form_holds;
  c.doc["verdicts"]["terms_checked"] = v.terms_checked;
  c.doc["verdicts"]["unit_coefficient"] = v.unit_coefficient ? json(v.unit_coefficient->get_str()) : json(nullptr);
  Table t({"degree", "rank H(psi)"});
  for (const auto& [p, r] : v.psi_rank) t.row({std::to_string(p), std::to_string(r)});
  c.text << "relative model generators: ";
  for (std::size_t i = 0; i < v.adjoined.size(); ++i) c.text << (i ? ", " : "") << v.adjoined[i];
  c.text << "\n" << t.str();
  if (!v.closed_form_holds) c.text << "closed form fails: " << v.closed_form_failure << "\n";
  const std::string chi = std::to_string(v.euler_characteristic);
  if (v.euler_characteristic == 0) {
    c.verdict(v.trivial ? "trivial (χ = 0)" : "not trivial although χ = 0", v.trivial && v.closed_form_holds);
  } else {
    c.verdict("ψ(1⊗1⊗c) = " + chi + "·Ω⊗c (χ = " + chi + ")", v.closed_form_holds);
  }
}

void cmd_fiber_intersection(Context& c) {
  const auto& a = c.pd();
  c.header("fiber-intersection");
  const int n = c.max_degree(2 * a.dimension);
  const auto f = intersection_with_fiber(a, n, true);
  set_degrees(c.doc, f.bar_betti);
  c.doc["tables"]["bar_betti"] = betti_json(f.bar_betti);
  c.doc["tables"]["hochschild_rank"] = betti_json(f.hochschild_rank);
  c.doc["tables"]["sullivan_rank"] = betti_json(f.sullivan_rank);
  c.doc["verdicts"]["injective"] = f.injective;
  c.doc["verdicts"]["ranks_agree"] = f.ranks_agree;
  Table t({"degree", "dim H(BA)", "rank (bar)", "rank (sullivan)"});
  for (const auto& [p, b] : f.bar_betti)
    t.row({std::to_string(p), std::to_string(b), std::to_string(f.hochschild_rank.at(p)), std::to_string(f.sullivan_rank.at(p))});
  c.text << "H(BA) -> H^{*+" << a.dimension << "}(CH(A)), multiplication by omega\n" << t.str();
  c.text << "injective: " << yes_no(f.injective) << "\n";
  c.verdict(f.ranks_agree ? "bar and sullivan ranks agree up to degree " + std::to_string(n)
                          : "bar and sullivan ranks disagree",
            f.ranks_agree);
}

void cmd_diagonal_class(Context& c) {
  const auto& a = c.pd();
  c.header("diagonal-class");
  require_poincare_duality(a);
  const auto d = diagonal_class(a);
  const auto dual = dual_basis(a);
  const std::string dtext = format_linear(d.square, d.element);
  c.doc["tables"]["diagonal"] = dtext;
  json duals = json::object();
  Table t({"a", "a'"});
  for (std::size_t i = 0; i < a.algebra.dim(); ++i) {
    duals[a.algebra.label(i)] = format_linear(a.algebra, dual[i]);
    t.row({a.algebra.label(i), format_linear(a.algebra, dual[i])});
  }
  c.doc["tables"]["dual_basis"] = duals;
  c.text << "D = " << dtext << "\n" << t.str();
  c.verdict("D is a cocycle and (a⊗1)D = (1⊗a)D for every basis element", true);
}

void cmd_module_property(Context& c) {
  const auto& a = c.pd();
  c.header("module-property");
  const int n = c.max_degree(2 * a.dimension);
  const auto v = check_module_property(a, n);
  c.doc["verdicts"]["triples_checked"] = v.triples_checked;
  c.doc["verdicts"]["coordinates_checked"] = v.coordinates_checked;
  c.doc["verdicts"]["nonzero_coordinates"] = v.nonzero_coordinates;
  c.text << "triples: " << v.triples_checked << ", coordinates: " << v.coordinates_checked
         << ", nonzero: " << v.nonzero_coordinates << "\n";
  if (v.counterexample) {
    const auto& ce = *v.counterexample;
    const auto& [q, i, r, j] = ce.coordinate;
    std::ostringstream where;
    where << "alpha1 = " << ce.alpha1 << ", alpha2 = " << ce.alpha2 << ", z = " << ce.z << ", coordinate "
          << LoopCohomology::class_label(q, i) << "⊗" << LoopCohomology::class_label(r, j) << ": " << ce.lhs.get_str()
          << " != " << ce.rhs.get_str();
    c.doc["verdicts"]["counterexample"] = where.str();
    c.text << "counterexample: " << where.str() << "\n";
  }
  c.verdict(v.pass ? "module property holds up to degree " + std::to_string(n) : "module property fails", v.pass);
}

void cmd_bg_loop_product(Context& c) {
  const auto& g = c.bg();
  c.header("bg-loop-product");
  const int n = c.max_degree(0);
  const auto v = bg_loop_product(g, n);
  c.doc["verdicts"]["inclusion_quasi_iso"] = v.inclusion_quasi_iso;
  c.doc["verdicts"]["psi_chain_map"] = v.psi_chain_map;
  c.doc["verdicts"]["monomials_checked"] = v.monomials_checked;
  c.text << "inclusion quasi-isomorphism: " << yes_no(v.inclusion_quasi_iso) << "\n"
         << "psi chain map: " << yes_no(v.psi_chain_map) << "\n"
         << "monomials checked: " << v.monomials_checked << "\n";
  c.verdict(v.trivial ? "loop product trivial up to degree " + std::to_string(n) : "loop product not shown trivial",
            v.trivial);
}

void cmd_bg_loop_coproduct(Context& c) {
  const auto& g = c.bg();
  c.header("bg-loop-coproduct");
  const int n = c.max_degree(0);
  const auto v = bg_loop_coproduct(g, n);
  json ranks = json::object();
  Table t({"degree", "rank", "dim"});
  for (const auto& [p, r] : v.ranks) {
    ranks[std::to_string(p)] = {{"rank", r.first}, {"dim", r.second}};
    t.row({std::to_string(p), std::to_string(r.first), std::to_string(r.second)});
  }
  c.doc["tables"]["composite_rank"] = ranks;
  c.doc["verdicts"]["tau_quasi_iso"] = v.tau_quasi_iso;
  c.doc["verdicts"]["psi_quasi_iso"] = v.psi_quasi_iso;
  c.doc["verdicts"]["pi_surjective"] = v.pi_surjective;
  c.doc["verdicts"]["q_chain_map"] = v.q_chain_map;
  c.text << "psi q^! tau by target degree\n" << t.str();
  c.text << "tau quasi-isomorphism: " << yes_no(v.tau_quasi_iso) << "\npsi quasi-isomorphism: " << yes_no(v.psi_quasi_iso)
         << "\npi surjective: " << yes_no(v.pi_surjective) << "\n";
  const bool pass = v.surjective && v.pi_surjective;
  c.verdict(pass ? "dual coproduct surjective up to degree " + std::to_string(n) + "; loop coproduct injective"
                 : "dual coproduct not shown surjective",
            pass);
}

void cmd_ext_diagonal(Context& c) {
  const FreeCdga model = c.sullivan_or_bg();
  c.header("ext-diagonal");
  const int n = c.max_degree(0);
  if (c.options.copies < 1) throw UsageError("--copies must be at least 1");
  const auto e = ext_diagonal(model, c.options.copies, n, c.options.expected_d);
  set_degrees(c.doc, e.dimensions);
  c.doc["tables"]["dimensions"] = betti_json(e.dimensions);
  c.doc["tables"]["copies"] = e.copies;
  c.doc["verdicts"]["resolution_quasi_iso"] = e.resolution_quasi_iso;
  c.doc["verdicts"]["shift"] = e.shift ? json(*e.shift) : json(nullptr);
  c.doc["verdicts"]["gorenstein_dimension"] = e.gorenstein_dimension ? json(*e.gorenstein_dimension) : json(nullptr);
  c.doc["verdicts"]["first_failure"] = e.first_failure ? json(*e.first_failure) : json(nullptr);
  c.text << "Ext over the " << e.copies << "-fold tensor power, degrees " << -n << ".." << n << "\n"
         << betti_table(e.dimensions);
  c.text << "resolution quasi-isomorphism: " << yes_no(e.resolution_quasi_iso) << "\n";
  if (e.matches) {
    std::string d = e.gorenstein_dimension ? std::to_string(*e.gorenstein_dimension) : "undetermined";
    c.verdict("matches H^*(X) shifted by " + std::to_string(*e.shift) + " (d = " + d + ")",
              e.resolution_quasi_iso);
  } else {
    c.verdict("pattern mismatch" + (e.first_failure ? " at degree " + std::to_string(*e.first_failure) : std::string()),
              false);
  }
}

using Handler = void (*)(Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table{
      {"check-pd", cmd_check_pd},
      {"betti", cmd_betti},
      {"loop-betti", cmd_loop_betti},
      {"loop-product", cmd_loop_product},
      {"loop-coproduct", cmd_loop_coproduct},
      {"fiber-intersection", cmd_fiber_intersection},
      {"diagonal-class", cmd_diagonal_class},
      {"module-property", cmd_module_property},
      {"bg-loop-product", cmd_bg_loop_product},
      {"bg-loop-coproduct", cmd_bg_loop_coproduct},
      {"ext-diagonal", cmd_ext_diagonal},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

CommandResult run_command(const CommandOptions& options) {
  CommandResult result;
  Handler handler = nullptr;
  for (const auto& [name, h] : handlers())
    if (name == options.command) handler = h;
  if (!handler) {
    result.exit_code = kUsage;
    result.error = "unknown command '" + options.command + "'";
    return result;
  }
  Context c{options, {}, json::object(), {}, kOk};
  try {
    const std::string bytes = read_file(options.input);
    c.doc["command"] = options.command;
    c.doc["input"] = {{"path", options.input.string()}, {"digest", "sha256:" + sha256_hex(bytes)}};
    c.doc["degrees"] = json::array();
    c.doc["betti"] = json::array();
    c.doc["tables"] = json::object();
    c.doc["verdicts"] = json::object();
    c.file = parse_algebra(bytes, options.input.string());
    c.doc["input"]["name"] = c.file.name;
    c.doc["input"]["kind"] = to_string(c.file.kind);
    handler(c);
    result.exit_code = c.exit_code;
  } catch (const TruncationError& e) {
    result.exit_code = kTruncation;
    result.error = e.what();
  } catch (const ParseError& e) {
    result.exit_code = kUsage;
    result.error = std::string("parse error: ") + e.what();
  } catch (const ValidationError& e) {
    result.exit_code = kUsage;
    result.error = std::string("validation error: ") + e.what();
  } catch (const UsageError& e) {
    result.exit_code = kUsage;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kVerdictFail;
    result.error = std::string("error: ") + e.what();
  }
  result.text = c.text.str();
  c.doc["exit_code"] = result.exit_code;
  if (!result.error.empty()) c.doc["error"] = result.error;
  result.document = std::move(c.doc);
  return result;
}

}  // namespace stringtop::cli
