// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stringtop/bar.hpp"
#include "stringtop/cdga.hpp"
#include "stringtop/cli.hpp"
#include "stringtop/io.hpp"
#include "stringtop/pd_algebra.hpp"
#include "stringtop/string_ops.hpp"

using namespace stringtop;

namespace {

const std::string kFixtures = STRINGTOP_FIXTURES;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures; the first failing check is reported.
struct Checker {
  Outcome out;
  void expect(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

AlgebraFile fixture(const std::string& name) { return load_algebra(kFixtures + "/" + name); }
FinitePdAlgebra pd(const std::string& name) { return fixture(name).pd.value(); }
BGPresentation bg(const std::string& name) { return fixture(name).bg.value(); }
FreeCdga sullivan(const std::string& name) {
  auto f = fixture(name);
  return f.kind == AlgebraKind::BG ? bg_model(f.bg.value()) : f.sullivan.value();
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

std::vector<std::size_t> values(const std::map<int, std::size_t>& m) {
  std::vector<std::size_t> out;
  for (const auto& [p, b] : m) out.push_back(b);
  return out;
}

bool squares_to_zero(const ChainComplex& c) {
  for (int p = c.bottom; p + 1 < c.top; ++p)
    if (!(c.d(p + 1) * c.d(p)).is_zero()) return false;
  return true;
}

Outcome pd_axioms() {
  Checker c;
  for (const auto* name : {"s3.alg", "s2.alg", "cp2.alg"}) {
    const auto v = check_poincare_duality(pd(name));
    c.expect(v.pass, std::string(name) + ": " + v.message);
  }
  const auto bad = check_poincare_duality(pd("cp2-bad.alg"));
  c.expect(!bad.pass && bad.failed_axiom == "(i)", "cp2-bad.alg: expected failure of (i), got '" + bad.failed_axiom + "'");
  if (c.out.pass) c.out.detail = "S3, S2, CP2 pass; corrupted CP2 fails (i)";
  return c.out;
}

Outcome diagonal() {
  Checker c;
  const std::vector<std::pair<std::string, std::string>> expected{
      {"s2.alg", "1⊗x + x⊗1"}, {"s3.alg", "1⊗x - x⊗1"}, {"cp2.alg", "1⊗x2 + x⊗x + x2⊗1"}};
  for (const auto& [name, formula] : expected) {
    cli::CommandOptions o;
    o.command = "diagonal-class";
    o.input = kFixtures + "/" + name;
    const auto r = cli::run_command(o);
    const auto got = r.document["tables"]["diagonal"].get<std::string>();
    c.expect(r.exit_code == cli::kOk && got == formula, name + ": D = " + got);

    const auto a = pd(name);
    const auto dc = diagonal_class(a);
    for (std::size_t i = 0; i < a.algebra.dim(); ++i) {
      const auto left = dc.square.multiply(left_factor(a.algebra, i), dc.element);
      const auto right = dc.square.multiply(right_factor(a.algebra, i), dc.element);
      c.expect(left == right, name + ": (a(x)1)D != (1(x)a)D for " + a.algebra.label(i));
    }
  }
  if (c.out.pass) c.out.detail = "D(S2), D(S3), D(CP2) as expected; (a(x)1)D = (1(x)a)D on every basis element";
  return c.out;
}

Outcome loop_betti() {
  Checker c;
  const auto s3s = loop_betti_sullivan(sullivan("s3-sullivan.alg"), 10);
  const auto s3h = loop_betti_hochschild(pd("s3.alg").algebra, 10);
  const std::vector<std::size_t> expected{1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  c.expect(values(s3s.betti) == expected, "S3 Sullivan: " + join(values(s3s.betti)));
  c.expect(values(s3h.betti) == expected, "S3 Hochschild: " + join(values(s3h.betti)));
  const auto s2s = loop_betti_sullivan(sullivan("s2-sullivan.alg"), 6);
  const auto s2h = loop_betti_hochschild(pd("s2.alg").algebra, 6);
  c.expect(s2s.betti.size() == 7 && s2s.betti == s2h.betti,
           "S2: Sullivan " + join(values(s2s.betti)) + " vs Hochschild " + join(values(s2h.betti)));
  if (c.out.pass) c.out.detail = "S3 " + join(expected) + "; S2 " + join(values(s2s.betti));
  return c.out;
}

Outcome coproduct() {
  Checker c;
  const auto s3 = loop_coproduct_psi(pd("s3.alg"), 8);
  c.expect(s3.trivial && s3.euler_characteristic == 0, "S3 not reported trivial");
  cli::CommandOptions o;
  o.command = "loop-coproduct";
  o.input = kFixtures + "/s3.alg";
  const auto r = cli::run_command(o);
  const auto summary = r.document["verdicts"]["summary"].get<std::string>();
  c.expect(summary.rfind("trivial", 0) == 0, "S3 verdict: " + summary);
  const auto s2 = loop_coproduct_psi(pd("s2.alg"), 8);
  c.expect(s2.closed_form_holds && s2.unit_coefficient == Rational(2), "S2 coefficient is not 2");
  const auto cp2 = loop_coproduct_psi(pd("cp2.alg"), 8);
  c.expect(cp2.closed_form_holds && cp2.unit_coefficient == Rational(3), "CP2 coefficient is not 3");
  if (c.out.pass) c.out.detail = "S3 \"" + summary + "\"; S2 coefficient 2; CP2 coefficient 3";
  return c.out;
}

Outcome module_property() {
  Checker c;
  std::size_t triples = 0;
  for (const auto* name : {"s3.alg", "cp2.alg"}) {
    const auto v = check_module_property(pd(name), 8);
    c.expect(v.pass && !v.counterexample, std::string(name) + ": counterexample found");
    c.expect(v.triples_checked > 0, std::string(name) + ": nothing checked");
    triples += v.triples_checked;
  }
  if (c.out.pass) c.out.detail = std::to_string(triples) + " triples, 0 counterexamples";
  return c.out;
}

Outcome bg_product() {
  Checker c;
  for (const auto& [name, n] : {std::pair{"bs1.alg", 10}, std::pair{"bsu2.alg", 10}, std::pair{"bg-2-4.alg", 8}}) {
    const auto v = bg_loop_product(bg(name), n);
    c.expect(v.trivial, std::string(name) + ": loop product not trivial up to " + std::to_string(n));
  }
  if (c.out.pass) c.out.detail = "trivial for BS1, BSU(2) to 10 and degrees (2,4) to 8";
  return c.out;
}

Outcome bg_coproduct() {
  Checker c;
  for (const auto* name : {"bs1.alg", "bsu2.alg"}) {
    const auto v = bg_loop_coproduct(bg(name), 10);
    c.expect(v.surjective, std::string(name) + ": dual coproduct not surjective");
    for (const auto& [p, rd] : v.ranks)
      c.expect(rd.first == rd.second, std::string(name) + ": rank defect in degree " + std::to_string(p));
  }
  if (c.out.pass) c.out.detail = "dual coproduct surjective to 10 for BS1 and BSU(2)";
  return c.out;
}

Outcome ext() {
  Checker c;
  const auto v = ext_diagonal(sullivan("bs1.alg"), 2, 9);
  for (int k = -9; k <= 9; ++k) {
    const std::size_t want = (k >= -1 && (k % 2 != 0)) ? 1 : 0;
    const auto it = v.dimensions.find(k);
    const std::size_t got = it == v.dimensions.end() ? 0 : it->second;
    c.expect(got == want, "degree " + std::to_string(k) + ": dimension " + std::to_string(got));
  }
  c.expect(v.matches && v.shift && *v.shift == -1, "no single consistent shift");
  if (c.out.pass) c.out.detail = "dimension 1 in degrees -1,1,...,9; shift -1";
  return c.out;
}

Outcome fiber() {
  Checker c;
  const auto s3 = intersection_with_fiber(pd("s3.alg"), 7, false);
  c.expect(s3.injective, "S3: omega inclusion not injective");
  for (const auto& [p, b] : s3.bar_betti)
    c.expect(s3.hochschild_rank.at(p) == b, "S3: rank defect in degree " + std::to_string(p));
  const auto s2 = intersection_with_fiber(pd("s2.alg"), 6, true);
  c.expect(s2.ranks_agree && s2.sullivan_rank == s2.hochschild_rank, "S2: Sullivan and Hochschild ranks differ");
  if (c.out.pass) c.out.detail = "S3 injective to 7; S2 ranks " + join(values(s2.hochschild_rank));
  return c.out;
}

// Applies each basis permutation to the differential and compares Betti numbers.
bool order_independent(const ChainComplex& c, int lo, int hi, std::mt19937& rng) {
  std::map<int, Matrix> perm;
  for (int p = c.bottom; p <= c.top; ++p) {
    const std::size_t n = c.basis.dim(p);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(order[i], i) = 1;
    perm[p] = m;
  }
  std::map<int, Matrix> blocks;
  for (int p = c.bottom; p < c.top; ++p) blocks[p] = perm[p + 1].transpose() * c.d(p) * perm[p];
  const auto shuffled = make_complex(c.basis, blocks, c.bottom, c.top);
  const auto h = homology(c, lo, hi), hs = homology(shuffled, lo, hi);
  for (int p = lo; p <= hi; ++p)
    if (h.betti(p) != hs.betti(p)) return false;
  return true;
}

Outcome properties() {
  Checker c;
  std::size_t complexes = 0;
  std::vector<std::pair<std::string, FiniteCdga>> finite;
  for (const auto* name : {"s2.alg", "s3.alg", "cp2.alg", "s2xs3.alg"}) finite.emplace_back(name, pd(name).algebra);
  for (const auto* name : {"s2-sullivan.alg", "s3-sullivan.alg", "cp2-sullivan.alg"})
    finite.emplace_back(name, truncate(sullivan(name), 9));

  for (const auto& [name, a] : finite) {
    for (auto [l, r] : {std::pair{Side::Ground, Side::Ground}, std::pair{Side::Algebra, Side::Algebra},
                        std::pair{Side::Ground, Side::Algebra}, std::pair{Side::Algebra, Side::Ground}}) {
      c.expect(squares_to_zero(BarConstruction(a, l, r).complex(7).complex()), name + ": bar d^2 != 0");
      ++complexes;
    }
    HochschildComplex ch(a);
    c.expect(squares_to_zero(ch.complex(8).complex()), name + ": Hochschild d^2 != 0");
    c.expect(squares_to_zero(NablaTarget(ch).complex(6).complex()), name + ": CH (x) CH d^2 != 0");
    complexes += 2;
  }
  for (const auto* name : {"s2-sullivan.alg", "s3-sullivan.alg", "cp2-sullivan.alg", "bs1.alg", "bsu2.alg",
                           "bg-2-4.alg"}) {
    const auto model = sullivan(name);
    c.expect(squares_to_zero(model.complex(10).complex()), std::string(name) + ": model d^2 != 0");
    const auto loop = loop_space_model(model);
    c.expect(check_cdga(loop, 10).pass && squares_to_zero(loop.complex(10).complex()),
             std::string(name) + ": loop model d^2 != 0");
    complexes += 2;
  }
  for (const auto* name : {"s2.alg", "s3.alg", "cp2.alg"}) {
    const auto rel = multiplication_model(pd(name), 6);
    c.expect(squares_to_zero(rel.extension.complex(7).complex()), std::string(name) + ": relative model d^2 != 0");
    ++complexes;
  }

  // every word of length <= 5 over three letters
  std::vector<Word> words{{}};
  for (std::size_t start = 0; start < words.size(); ++start)
    if (words[start].size() < 5)
      for (std::size_t l = 1; l <= 3; ++l) {
        auto w = words[start];
        w.push_back(l);
        words.push_back(w);
      }
  for (const auto& w : words) {
    using Triple = std::tuple<Word, Word, Word>;
    Combination<Triple> left, right;
    for (const auto& [p, x] : bar_coproduct(w)) {
      for (const auto& [q, y] : bar_coproduct(p.first)) left.add(Triple{q.first, q.second, p.second}, x * y);
      for (const auto& [q, y] : bar_coproduct(p.second)) right.add(Triple{p.first, q.first, q.second}, x * y);
    }
    c.expect(left == right, "bar coproduct not coassociative on a word of length " + std::to_string(w.size()));
  }

  const auto s2 = HochschildComplex(pd("s2.alg").algebra).complex(8).complex();
  const auto cp2 = HochschildComplex(pd("cp2.alg").algebra).complex(8).complex();
  const auto loop = loop_space_model(sullivan("s2-sullivan.alg")).complex(9).complex();
  for (unsigned seed = 0; seed < 10; ++seed) {
    std::mt19937 r(seed);
    c.expect(order_independent(s2, 0, 7, r) && order_independent(cp2, 0, 7, r) && order_independent(loop, 0, 8, r),
             "Betti numbers changed under basis permutation, seed " + std::to_string(seed));
  }
  if (c.out.pass)
    c.out.detail = std::to_string(complexes) + " complexes with d^2 = 0; " + std::to_string(words.size()) +
                   " words coassociative; 10 seeds";
  return c.out;
}

Outcome bar_homology() {
  Checker c;
  BarConstruction bar(pd("s3.alg").algebra);
  const auto h = homology(bar.complex(10).complex(), 0, 9);
  std::vector<std::size_t> got;
  for (int p = 0; p <= 9; ++p) {
    got.push_back(h.betti(p));
    c.expect(h.betti(p) == (p % 2 == 0 ? 1u : 0u), "degree " + std::to_string(p) + ": " + std::to_string(h.betti(p)));
  }
  if (c.out.pass) c.out.detail = "Betti " + join(got);
  return c.out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"pd-axioms", pd_axioms},          {"diagonal-class", diagonal},  {"loop-betti", loop_betti},
      {"loop-coproduct", coproduct},     {"module-property", module_property},
      {"bg-loop-product", bg_product},   {"bg-loop-coproduct", bg_coproduct},
      {"ext-diagonal", ext},             {"fiber-intersection", fiber}, {"property-suites", properties},
      {"bar-homology", bar_homology}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (ms > 60000) o = {false, "took " + std::to_string(ms) + " ms"};
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %-19s %s (%lld ms)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), static_cast<long long>(ms));
    std::fflush(stdout);
  }
  return failures;
}
