#include <map>
#include <string>
#include <vector>

#include "addlab/logexpr.hpp"
#include "addlab/polynomial.hpp"
#include "addlab/probes.hpp"
#include "addlab/roots.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace addlab;
using namespace addlab::polyalgebra;
using testutil::gap;

namespace {

// 50-digit references for the in-]1,2[ root of x^{k+1} - x^k - 1.
const std::map<int, std::string> kPhi = {
    {1, "1.6180339887498948482045868343656381177203091798058"},
    {2, "1.4655712318767680266567312252199391080255775684723"},
    {3, "1.3802775690976141156733016918227318778166267015588"},
    {4, "1.3247179572447460259609088544780973407344040569017"},
    {5, "1.2851990332453493679072604641341957966577589438946"},
    {6, "1.2554228710768465432050014194402615872548109990776"},
};

}  // namespace

TEST_CASE("polynomial construction, arithmetic and printing") {
  IntPolynomial p = IntPolynomial::from_terms({{3, 1}, {1, -1}, {0, -1}});
  CHECK(p.degree() == 3);
  CHECK(p.to_string() == "x^3 - x - 1");
  CHECK(p.coeff(2) == 0);
  CHECK(p.leading() == 1);

  // Repeated degrees accumulate; cancellation trims.
  CHECK(IntPolynomial::from_terms({{2, 1}, {2, 1}}).to_string() == "2x^2");
  CHECK((IntPolynomial::monomial(2) - IntPolynomial::monomial(2)).is_zero());

  IntPolynomial q = IntPolynomial::from_terms({{1, 1}, {0, 1}});  // x + 1
  CHECK((q * q).to_string() == "x^2 + 2x + 1");
  CHECK((-q).to_string() == "-x - 1");
  CHECK((q * BigInt(3)).to_string() == "3x + 3");
  CHECK(p.eval(BigInt(2)) == 5);
  CHECK(p.eval(Rational(1, 2)) == Rational(-11, 8));
  CHECK(p.derivative().to_string() == "3x^2 - 1");
}

TEST_CASE("exact division, gcd and squarefree reduction") {
  IntPolynomial a = IntPolynomial::from_terms({{1, 1}, {0, -1}});  // x - 1
  IntPolynomial b = IntPolynomial::from_terms({{1, 1}, {0, 3}});   // x + 3
  IntPolynomial sq = a * a * b;

  auto q = sq.divide_exact(a);
  REQUIRE(q.has_value());
  CHECK(*q == a * b);
  CHECK_FALSE(sq.divide_exact(IntPolynomial::from_terms({{1, 1}, {0, 5}})).has_value());

  CHECK(poly_gcd(sq, a * b) == a * b);
  CHECK(sq.squarefree_part() == a * b);
  CHECK((sq * BigInt(-6)).primitive_part() == sq);
}

TEST_CASE("sturm chain counts real roots exactly") {
  CHECK(SturmChain(IntPolynomial::from_terms({{2, 1}, {1, -1}, {0, -1}})).count_all() == 2);
  CHECK(SturmChain(IntPolynomial::from_terms({{2, 1}, {0, 1}})).count_all() == 0);
  CHECK(SturmChain(IntPolynomial::from_terms({{3, 1}, {1, -1}, {0, -1}})).count_all() == 1);

  // (x-1)(x-2)(x-3): counting is interval-exact with ]lo, hi] brackets.
  IntPolynomial w = IntPolynomial::from_terms({{1, 1}, {0, -1}}) *
                    IntPolynomial::from_terms({{1, 1}, {0, -2}}) *
                    IntPolynomial::from_terms({{1, 1}, {0, -3}});
  SturmChain chain(w);
  CHECK(chain.count_all() == 3);
  CHECK(chain.count(Rational(1), Rational(3)) == 2);  // ]1,3] excludes the root at 1
  CHECK(chain.count(Rational(0), Rational(1)) == 1);
  CHECK(chain.count_above(Rational(2)) == 1);
  CHECK(chain.count_upto(Rational(2)) == 2);

  // Multiplicities collapse: the chain works on the squarefree part.
  CHECK(SturmChain(w * w).count_all() == 3);
}

TEST_CASE("root isolation brackets each real root once") {
  IntPolynomial w = IntPolynomial::from_terms({{1, 1}, {0, -1}}) *
                    IntPolynomial::from_terms({{1, 1}, {0, -2}}) *
                    IntPolynomial::from_terms({{1, 2}, {0, 7}});
  auto intervals = isolate_real_roots(w);
  REQUIRE(intervals.size() == 3);
  SturmChain chain(w);
  for (const auto& [lo, hi] : intervals) {
    CHECK(lo < hi);
    CHECK(chain.count(lo, hi) == 1);
  }
  Rational b = root_bound(w);
  CHECK(b >= Rational(7, 2));

  ScopedPrecision prec(50);
  auto roots = real_roots(w, Real("1e-40"));
  REQUIRE(roots.size() == 3);
  CHECK(gap(roots[0], "-3.5") < Real("1e-39"));
  CHECK(gap(roots[1], "1") < Real("1e-39"));
  CHECK(gap(roots[2], "2") < Real("1e-39"));
}

TEST_CASE("sign scan agrees with sturm on handpicked cases") {
  IntPolynomial p = IntPolynomial::from_terms({{3, 1}, {1, -1}, {0, -1}});
  CHECK(sign_scan_root_count(p, Rational(-3), Rational(3), Rational(1, 64)) == 1);
  // Root exactly on a grid point is counted once.
  IntPolynomial q = IntPolynomial::from_terms({{1, 1}});  // x
  CHECK(sign_scan_root_count(q, Rational(-1), Rational(1), Rational(1, 4)) == 1);
  CHECK_THROWS_AS(sign_scan_root_count(q, Rational(0), Rational(1), Rational(0)),
                  std::invalid_argument);
}

TEST_CASE("phi constants match their defining polynomials") {
  ScopedPrecision prec(60);
  for (int k = 1; k <= 6; ++k) {
    CHECK(phi_defining_poly(k).degree() == k + 1);
    PhiConstant c = phi_constant(k, Real("1e-52"));
    CHECK(gap(c.value, kPhi.at(k)) < Real("1e-48"));
    CHECK(boost::multiprecision::abs(c.defining_poly.eval(c.value)) < Real("1e-45"));
  }
}

TEST_CASE("defining polynomial is reducible exactly at k = 4 mod 6") {
  IntPolynomial quad = IntPolynomial::from_terms({{2, 1}, {1, -1}, {0, 1}});
  for (int k = 1; k <= 30; ++k) {
    bool divides = phi_defining_poly(k).divide_exact(quad).has_value();
    CHECK(divides == (k % 6 == 4));
    if (k % 6 == 4)
      CHECK(phi_minimal_poly(k) * quad == phi_defining_poly(k));
    else
      CHECK(phi_minimal_poly(k) == phi_defining_poly(k));
  }
  CHECK(phi_minimal_poly(4).to_string() == "x^3 - x - 1");
}

TEST_CASE("silver means solve x^2 - kx - 1") {
  ScopedPrecision prec(50);
  CHECK(gap(silver_mean(1).value, kPhi.at(1)) < Real("1e-45"));
  CHECK(gap(silver_mean(2).value, "2.4142135623730950488016887242096980785696718753769") < Real("1e-45"));
  for (int k = 1; k <= 6; ++k) {
    Real v = silver_mean(k).value;
    CHECK(boost::multiprecision::abs(v * v - k * v - 1) < Real("1e-45"));
  }
}

TEST_CASE("dominant_root demands a sign change and polishes to tol") {
  ScopedPrecision prec(50);
  IntPolynomial fib = IntPolynomial::from_terms({{2, 1}, {1, -1}, {0, -1}});
  Real phi = dominant_root(fib, Real(1), Real(2), Real("1e-45"));
  CHECK(gap(phi, kPhi.at(1)) < Real("1e-43"));
  CHECK_THROWS(dominant_root(fib, Real(3), Real(4), Real("1e-10")));
}

TEST_CASE("sturm_real_root_count handles open-ended brackets") {
  IntPolynomial p = IntPolynomial::from_terms({{2, 1}, {1, -1}, {0, -1}});
  CHECK(sturm_real_root_count(p, std::nullopt, std::nullopt) == 2);
  CHECK(sturm_real_root_count(p, Rational(0), std::nullopt) == 1);
  CHECK(sturm_real_root_count(p, std::nullopt, Rational(0)) == 1);
  CHECK(sturm_real_root_count(p, Rational(2), std::nullopt) == 0);
}

TEST_CASE("build_psi reproduces every printed family member") {
  // (k, m) -> printed polynomial.
  const std::vector<std::tuple<int, int, std::string>> printed = {
      {1, 0, "x^2 - x - 1"},
      {1, 1, "x^3 - 2x - 1"},
      {1, 2, "x^4 - x^2 - 2x - 1"},
      {1, 3, "x^5 - x^3 - x^2 - 2x - 1"},
      {1, 4, "x^6 - x^4 - x^3 - x^2 - 2x - 1"},
      {1, 5, "x^7 - x^5 - x^4 - x^3 - x^2 - 2x - 1"},
      {2, 0, "x^3 - x^2 - 1"},
      {2, 1, "x^4 - x^2 - x - 1"},
      {2, 2, "x^5 - 2x^2 - x - 1"},
      {3, 0, "x^4 - x^3 - 1"},
      {3, 1, "x^5 - x^3 - x - 1"},
      {3, 2, "x^6 - x^3 - x^2 - x - 1"},
      {4, 0, "x^5 - x^4 - 1"},
      {4, 1, "x^6 - x^4 - x - 1"},
      {4, 2, "x^7 - x^4 - x^2 - x - 1"},
      {4, 3, "x^8 - x^4 - x^3 - x^2 - x - 1"},
      {4, 4, "x^9 - 2x^4 - x^3 - x^2 - x - 1"},
      {4, 5, "x^10 - x^5 - 2x^4 - x^3 - x^2 - x - 1"},
      {5, 0, "x^6 - x^5 - 1"},
      {5, 1, "x^7 - x^5 - x - 1"},
      {5, 2, "x^8 - x^5 - x^2 - x - 1"},
      {5, 3, "x^9 - x^5 - x^3 - x^2 - x - 1"},
      {5, 4, "x^10 - x^5 - x^4 - x^3 - x^2 - x - 1"},
      {5, 5, "x^11 - 2x^5 - x^4 - x^3 - x^2 - x - 1"},
      {5, 7, "x^13 - x^7 - x^6 - 2x^5 - x^4 - x^3 - x^2 - x - 1"},
  };
  for (const auto& [k, m, text] : printed) {
    CAPTURE(k);
    CAPTURE(m);
    CHECK(build_psi(k, m).to_string() == text);
  }
}

TEST_CASE("build_psi equals the closed product form") {
  for (int k = 1; k <= 6; ++k)
    for (int m = 0; m <= 8; ++m) {
      CAPTURE(k);
      CAPTURE(m);
      IntPolynomial psi = build_psi(k, m);
      CHECK(psi == psi_product_form(k, m));
      CHECK(psi.degree() == k + m + 1);
      CHECK(psi.eval(BigInt(0)) == -1);
    }
}

TEST_CASE("phi_k is a root of every family member") {
  ScopedPrecision prec(30);
  for (int k = 1; k <= 6; ++k) {
    Real phi(kPhi.at(k));
    for (int m = 0; m <= 8; ++m) {
      CAPTURE(k);
      CAPTURE(m);
      CHECK(boost::multiprecision::abs(build_psi(k, m).eval(phi)) < Real("1e-20"));
      MembershipResult mem = verify_root_membership(build_psi(k, m), k, Real("1e-20"));
      CHECK(mem.is_member);
      CHECK(mem.defining_poly_reducible == (k % 6 == 4));
      CHECK(mem.quotient * phi_minimal_poly(k) == build_psi(k, m));
    }
  }
}

TEST_CASE("derivative gaps grow by a factor of exactly phi_k") {
  ScopedPrecision prec(50);
  for (int k = 1; k <= 6; ++k) {
    Real phi(kPhi.at(k));
    auto gaps = psi_derivative_gaps(k, 8, 50);
    REQUIRE(gaps.size() >= 8);
    int ratios = 0;
    for (const auto& g : gaps)
      if (g.has_ratio) {
        ++ratios;
        CHECK(boost::multiprecision::abs(g.ratio - phi) < Real("1e-9"));
      }
    CHECK(ratios >= 7);
  }
}

TEST_CASE("real-root census: -1 appears iff m is odd, sigma iff k is odd") {
  ScopedPrecision prec(50);
  for (int k = 1; k <= 6; ++k)
    for (int m = 0; m <= 8; ++m) {
      CAPTURE(k);
      CAPTURE(m);
      PsiRootReport r = psi_real_roots(k, m, Real("1e-30"));
      bool m_odd = (m % 2 == 1);
      bool k_odd = (k % 2 == 1);
      CHECK(r.has_minus_one == m_odd);
      CHECK(r.has_sigma == k_odd);
      int expected = 1 + (m_odd ? 1 : 0) + (k_odd ? 1 : 0);
      CHECK(static_cast<int>(r.roots.size()) == expected);
      // The two-or-three-root description is wrong exactly when k is even
      // and m is even: it predicts -1 among the roots, but -1 is a root of
      // the cyclotomic-sum factor only for odd m. Mismatches are findings.
      CHECK(r.matches_claim == !(k % 2 == 0 && m % 2 == 0));
      if (k_odd) CHECK((r.sigma > -1 && r.sigma < 0));
    }

  // k = 1: sigma is -1/phi at every m.
  Real inv_phi = Real(1) / Real(kPhi.at(1));
  for (int m = 0; m <= 6; ++m) {
    PsiRootReport r = psi_real_roots(1, m, Real("1e-30"));
    CHECK(boost::multiprecision::abs(r.sigma + inv_phi) < Real("1e-25"));
  }
}

TEST_CASE("sigma gap ratio: uniform reading gives sigma^2, printed reading degenerates at m=2") {
  ScopedPrecision prec(50);
  auto probes = sigma_gap_probe(3, {2, 3, 4, 5, 6}, 50);
  REQUIRE(probes.size() == 5);
  for (const auto& p : probes) {
    CAPTURE(p.m);
    CHECK(boost::multiprecision::abs(p.uniform_ratio - p.sigma_squared) < Real("1e-40"));
    CHECK(p.printed_defined == (p.m != 2));
  }
  CHECK(gap(probes[0].sigma_squared, "0.671043606704") < Real("1e-10"));
}

TEST_CASE("cycle-with-loop adjacency has dominant eigenvalue phi_{n-1}") {
  ScopedPrecision prec(50);
  for (int n : {2, 3, 5, 10}) {
    CAPTURE(n);
    EigenCheck e = cycle_graph_eigen_check(n, Real("1e-12"));
    CHECK(e.residual < Real("1e-10"));
    CHECK(e.char_poly_matches);
    CHECK(e.char_poly == phi_defining_poly(n - 1));
  }
  CHECK(cycle_graph_eigen_check(2, Real("1e-12")).char_poly.to_string() == "x^2 - x - 1");
}

TEST_CASE("log catalog holds at 50 digits with residuals under 1e-10") {
  ScopedPrecision prec(50);
  CatalogReport rep = verify_log_catalog(50, Real("1e-10"));
  CHECK(rep.all_pass);
  CHECK(rep.entries.size() == 45);
  CHECK(rep.digits == 50);

  std::map<std::string, const CatalogEntry*> by_id;
  for (const auto& e : rep.entries) {
    CHECK(e.pass);
    CHECK(e.residual < Real("1e-10"));
    by_id[e.id] = &e;
  }
  // The one negative rational in the labeled list, and the largest one.
  REQUIRE(by_id.count("chi"));
  CHECK(by_id["chi"]->expected == Rational(-5, 4));
  REQUIRE(by_id.count("delta"));
  CHECK(by_id["delta"]->expected == Rational(7, 2));
  for (const char* id : {"base k=1", "base k=5", "kbonacci n=2", "kbonacci n=6",
                         "golden-power n=2", "golden-power n=4", "lucas-power n=1",
                         "lucas-power n=10", "silver k=2 n=1", "silver k=3 n=6", "alpha",
                         "beta", "epsilon", "gamma", "eta", "sigma", "tau", "plastic-base"})
    CHECK(by_id.count(id) == 1);
}

TEST_CASE("log expression evaluation rejects nonpositive arguments by atom index") {
  ScopedPrecision prec(30);
  LogExpr expr;
  LogAtom bad;
  bad.orientation = LogAtom::Orientation::CMinusX;
  bad.shift = 1;  // 1 - x^1 < 0 at x = 2
  expr.atoms = {bad};
  try {
    eval_log_expr(expr, Real(2));
    FAIL("expected domain_error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("atom") != std::string::npos);
  }

  // Log[1/(x-1)]/Log(x) at the golden ratio equals 1.
  LogAtom base;
  base.shift = 1;
  expr.atoms = {base};
  CHECK(gap(eval_log_expr(expr, Real(kPhi.at(1))), "1") < Real("1e-25"));
}

TEST_CASE("power fraction probe sizes its own precision and refuses less") {
  ScopedPrecision prec(30);
  Real x("1.7");
  CHECK(frac_probe_required_digits(x, nullptr, 40) == 26);
  CHECK_THROWS_AS(power_frac_probe(x, nullptr, 40, Real("1e-3"), 10), std::invalid_argument);
}

TEST_CASE("pisot powers cluster mod 1, generic powers do not") {
  ScopedPrecision prec(60);
  Real phi(kPhi.at(1));
  FracProbeReport golden = power_frac_probe(phi, nullptr, 40, Real("1e-3"), 60);
  REQUIRE(golden.fracs.size() == 40);
  CHECK_FALSE(golden.proximity_searched);
  for (std::size_t n = 10; n <= 40; ++n) {
    Real f = golden.fracs[n - 1];
    Real dist = f < Real(0.5) ? f : Real(1) - f;
    CHECK(dist < Real("0.01"));  // frac(phi^n) -> {0,1} geometrically
  }
  CHECK(gap(golden.star_discrepancy, "0.40371376") < Real("1e-6"));

  FracProbeReport generic = power_frac_probe(Real(3) / Real(2), nullptr, 40, Real("1e-3"), 60);
  CHECK(gap(generic.star_discrepancy, "0.16384933") < Real("1e-6"));
  CHECK(generic.star_discrepancy < golden.star_discrepancy);
}

TEST_CASE("proximity search runs only when a second base is supplied") {
  ScopedPrecision prec(40);
  Real x("1.7");
  Real y("1.7");
  FracProbeReport rep = power_frac_probe(x, &y, 10, Real("1e-6"), 40);
  CHECK(rep.proximity_searched);
  REQUIRE(rep.proximity_hit.has_value());
  CHECK(*rep.proximity_hit == 1);

  Real z("1.9");
  FracProbeReport far = power_frac_probe(x, &z, 5, Real("1e-30"), 40);
  CHECK(far.proximity_searched);
  CHECK_FALSE(far.proximity_hit.has_value());
}

TEST_CASE("star discrepancy of a tiny handpicked sample") {
  ScopedPrecision prec(30);
  Real d = star_discrepancy({Real("0.25"), Real("0.75")});
  CHECK(gap(d, "0.25") < Real("1e-20"));
}

TEST_CASE("nested power towers land on the advertised fixed points") {
  ScopedPrecision prec(30);
  Real tol("1e-20");
  struct Row {
    double k, alpha;
    std::string value;
  };
  const std::vector<Row> rows = {
      {1, 1, "1.61803398874989"}, {1, 2, "1.46557123187677"}, {1, 4, "1.32471795724475"},
      {2, 3, "1.54368901269208"}, {3, 2, "1.86370652781919"},
  };
  for (const auto& r : rows) {
    CAPTURE(r.k);
    CAPTURE(r.alpha);
    TowerResult t = nested_power_tower(Real(r.k), Real(r.alpha), tol);
    CHECK(gap(t.value, r.value) < Real("1e-14"));
    CHECK(t.roundtrip_residual < Real("1e-15"));
    CHECK(t.iterations > 0);
  }
  // k=2, alpha=1: x^2 - 2x... the fixed point is exactly 2.
  TowerResult two = nested_power_tower(Real(2), Real(1), tol);
  CHECK(gap(two.value, "2") < Real("1e-18"));
  // Inner fixed point is value^alpha.
  TowerResult t12 = nested_power_tower(Real(1), Real(2), tol);
  CHECK(gap(t12.inner_fixpoint, "2.147899036") < Real("1e-8"));
  CHECK(boost::multiprecision::abs(t12.inner_fixpoint - t12.value * t12.value) < Real("1e-18"));
}

TEST_CASE("odd-indexed nested radicals equal odd silver means") {
  ScopedPrecision prec(30);
  Real tol("1e-22");
  CHECK(gap(odd_silver_nested_radical(1, tol), "1.61803398874989") < Real("1e-14"));
  CHECK(gap(odd_silver_nested_radical(2, tol), "3.30277563773199") < Real("1e-14"));
  CHECK(gap(odd_silver_nested_radical(3, tol), "5.19258240356725") < Real("1e-14"));
  for (int k = 1; k <= 5; ++k) {
    Real radical = odd_silver_nested_radical(k, tol);
    Real silver = silver_mean(2 * k - 1).value;
    CHECK(boost::multiprecision::abs(radical - silver) < Real("1e-20"));
  }
}
