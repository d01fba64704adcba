#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "ringcert/errors.hpp"
#include "ringcert/example.hpp"
#include "ringcert/groebner.hpp"
#include "ringcert/ideal.hpp"

using namespace ringcert;

namespace {

const VariableSet kXYZ{"x", "y", "z"};
const VariableSet kXY{"x", "y"};

Polynomial P(std::string_view text, const VariableSet& vars = kXYZ) { return parse_polynomial(text, vars); }

Ideal I(std::initializer_list<const char*> gens, const VariableSet& vars = kXYZ,
        MonomialOrder order = MonomialOrder::grevlex()) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(P(g, vars));
  return Ideal(vars, std::move(ps), std::move(order));
}

std::vector<Polynomial> polys(std::initializer_list<const char*> texts, const VariableSet& vars = kXYZ) {
  std::vector<Polynomial> out;
  for (const char* t : texts) out.push_back(P(t, vars));
  return out;
}

Monomial random_monomial(std::mt19937_64& rng, std::size_t nvars, std::uint32_t max_exp) {
  std::uniform_int_distribution<std::uint32_t> e(0, max_exp);
  std::vector<std::uint32_t> exps(nvars);
  for (auto& v : exps) v = e(rng);
  return Monomial(exps);
}

std::vector<MonomialOrder> sample_orders() {
  return {MonomialOrder::grevlex(),
          MonomialOrder::lex(),
          MonomialOrder::block(1),
          MonomialOrder::block(2),
          MonomialOrder::weighted({1, 4, 4, 2}),
          MonomialOrder::elimination(1, MonomialOrder::weighted({2, 1, 3})),
          MonomialOrder::from_tag("block:1/lex"),
          MonomialOrder::from_tag("block:1/block:2/grevlex")};
}

}  // namespace

TEST(MonomialOrder, TotalMultiplicativeAndWellFounded) {
  std::mt19937_64 rng(31);
  const Monomial one(4);
  for (const auto& order : sample_orders()) {
    SCOPED_TRACE(order.tag());
    ASSERT_TRUE(order.fits(4));
    for (int i = 0; i < 400; ++i) {
      const Monomial a = random_monomial(rng, 4, 4), b = random_monomial(rng, 4, 4), c = random_monomial(rng, 4, 4);
      const int ab = order.compare(a, b);
      EXPECT_EQ(ab, -order.compare(b, a));
      EXPECT_EQ(ab == 0, a == b);
      if (ab < 0) EXPECT_LT(order.compare(a * c, b * c), 0);
      if (ab < 0 && order.compare(b, c) < 0) EXPECT_LT(order.compare(a, c), 0);
      if (!a.is_one()) EXPECT_GT(order.compare(a, one), 0);
    }
  }
}

TEST(MonomialOrder, KnownComparisons) {
  const Monomial x{{1, 0, 0}}, y{{0, 1, 0}}, z{{0, 0, 1}};
  const auto g = MonomialOrder::grevlex();
  EXPECT_GT(g.compare(x, y), 0);
  EXPECT_GT(g.compare(y * y, x), 0);
  EXPECT_LT(g.compare(x * z, y * y), 0);
  EXPECT_GT(MonomialOrder::lex().compare(x, y * y * z), 0);
  EXPECT_GT(MonomialOrder::block(1).compare(x, y * y * z), 0);
  EXPECT_LT(MonomialOrder::block(1).compare(y * z, x), 0);
  const auto w = MonomialOrder::weighted({1, 3, 3});
  EXPECT_GT(w.compare(y, x * x), 0);
  EXPECT_LT(w.compare(y, x * x * x * x), 0);
}

TEST(MonomialOrder, TagsRoundTrip) {
  for (const auto& order : sample_orders()) EXPECT_EQ(MonomialOrder::from_tag(order.tag()), order) << order.tag();
  EXPECT_EQ(MonomialOrder::from_tag("grevlex").tag(), "grevlex");
  EXPECT_EQ(MonomialOrder::from_tag("block:2").tag(), "block:2");
  EXPECT_EQ(MonomialOrder::from_tag("wgrevlex:1,8,8").tag(), "wgrevlex:1,8,8");
  EXPECT_EQ(MonomialOrder::from_tag("block:1/wgrevlex:2,5").tag(), "block:1/wgrevlex:2,5");
  for (const char* bad : {"", "revlex", "block:", "block:0", "block:x", "wgrevlex:", "wgrevlex:1,0", "block:1/foo"})
    EXPECT_THROW(MonomialOrder::from_tag(bad), ParseError) << bad;
  EXPECT_THROW(MonomialOrder::weighted({}), StructuralError);
  EXPECT_FALSE(MonomialOrder::weighted({1, 1}).fits(3));
  EXPECT_THROW(I({"x"}, kXYZ, MonomialOrder::weighted({1, 1})), StructuralError);
}

TEST(Groebner, BasisExamples) {
  EXPECT_EQ(groebner_basis(I({"x"})), polys({"x"}));
  EXPECT_EQ(groebner_basis(I({"y^2 + x", "x"})), polys({"x", "y^2"}));
  EXPECT_EQ(groebner_basis(I({"x*y - 1", "x"})), polys({"1"}));
  EXPECT_TRUE(groebner_basis(Ideal::zero(kXYZ)).empty());
  EXPECT_EQ(groebner_basis(Ideal::unit(kXYZ)), polys({"1"}));
}

TEST(Groebner, ClassicTwistedCubic) {
  const auto gb = groebner_basis(I({"x^2 - y", "x^3 - z"}, kXYZ, MonomialOrder::lex()));
  EXPECT_TRUE(satisfies_buchberger_criterion(gb, MonomialOrder::lex()));
  EXPECT_EQ(gb.front(), P("y^3 - z^2"));
}

TEST(Groebner, NormalFormExamples) {
  EXPECT_TRUE(normal_form(P("y^2"), I({"x", "y^2 + x"})).is_zero());
  EXPECT_EQ(normal_form(P("1"), I({"x", "y"})), P("1"));
  for (const char* g : {"x^2*y - z", "y^3 + 2*x*z - 1", "z^2 - x"})
    EXPECT_TRUE(normal_form(P(g), I({"x^2*y - z", "y^3 + 2*x*z - 1", "z^2 - x"})).is_zero()) << g;
}

TEST(Groebner, IdealEqualExamples) {
  const auto inst = example::build(3, 8, 1);
  const auto fs = inst.f_polynomials();
  const Ideal lhs(inst.ring, {inst.x(), fs[0], fs[1]});
  EXPECT_TRUE(ideal_equal(lhs, Ideal(inst.ring, {inst.x(), P("y^2"), P("z^2")})));
  EXPECT_TRUE(ideal_equal(I({"x", "y"}), I({"y", "x"})));
  EXPECT_FALSE(ideal_equal(I({"x"}), I({"x^2"})));
  EXPECT_THROW(ideal_equal(I({"x"}), I({"x"}, kXYZ, MonomialOrder::lex())), StructuralError);
}

TEST(Groebner, ColonExamples) {
  EXPECT_TRUE(ideal_equal(colon(I({"x*y"}), P("x")), I({"y"})));
  const Ideal sample = I({"x^2 + y*z", "x*y*z - 1"});
  EXPECT_TRUE(ideal_equal(colon(sample, P("1")), sample));
  EXPECT_THROW(colon(sample, Polynomial::zero(kXYZ)), StructuralError);
}

TEST(Groebner, GeneratorsOfTruncatedPrimeHaveXAsNonzerodivisor) {
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto inst = example::build(3, n, 1);
    const Ideal p = inst.P;
    EXPECT_TRUE(ideal_equal(colon(p, inst.x()), p)) << "N = " << n;
  }
  const auto small = example::build(3, 3, 1, MonomialOrder::grevlex());
  EXPECT_TRUE(ideal_equal(colon(small.P, small.x()), small.P));
}

TEST(Groebner, SaturateExamples) {
  EXPECT_TRUE(ideal_equal(saturate(I({"x*y"}), P("x")), I({"y"})));
  EXPECT_TRUE(saturate(I({"x^2"}), P("x")).is_unit());
  EXPECT_THROW(saturate(I({"x"}), Polynomial::zero(kXYZ)), StructuralError);
}

TEST(Groebner, SaturationOfPresentationMeetsBaseRingTrivially) {
  const VariableSet r{"x", "y", "z", "F", "G"};
  const Ideal ideal = I({"x*F + y^2", "x*G + z^2"}, r);
  const Ideal sat = saturate(ideal, P("x", r));
  // Every saturated generator vanishes once F = -y^2 w, G = -z^2 w with w = 1/x.
  const VariableSet target{"x", "y", "z", "w"};
  const Ideal inverse = I({"w*x - 1"}, target);
  for (const auto& g : sat.groebner_basis()) {
    const Polynomial image = substitute(g, {{"x", P("x", target)},
                                            {"y", P("y", target)},
                                            {"z", P("z", target)},
                                            {"F", P("-y^2*w", target)},
                                            {"G", P("-z^2*w", target)}});
    EXPECT_TRUE(inverse.contains(image)) << g.to_string();
  }
  const auto base = eliminate(sat, std::vector<std::string>{"x", "y", "z"});
  EXPECT_TRUE(base.is_zero() || groebner_basis(base).empty());
}

TEST(Groebner, EliminateExamples) {
  const VariableSet wxy{"w", "x", "y"};
  const auto e1 = eliminate(I({"w*x - 1", "y"}, wxy), std::vector<std::string>{"x", "y"});
  EXPECT_TRUE(ideal_equal(e1, I({"y"}, wxy)));
  for (const auto& g : e1.groebner_basis()) {
    EXPECT_FALSE(g.involves(0));
    EXPECT_TRUE(oracle::bounded_membership(oracle::from_lib(g), {oracle::from_lib(P("w*x - 1", wxy)),
                                                                  oracle::from_lib(P("y", wxy))},
                                           3));
  }

  const Ideal sample = I({"x^2 - y*z", "y^2 + x"});
  EXPECT_TRUE(ideal_equal(eliminate(sample, std::vector<std::string>{"x", "y", "z"}), sample));

  const VariableSet xyt{"x", "y", "t"};
  const auto e2 = eliminate(I({"x - t", "y - t^2"}, xyt), std::vector<std::string>{"x", "y"});
  EXPECT_TRUE(ideal_equal(e2, I({"y - x^2"}, xyt)));
  // Parametrization oracle: every element vanishes at (t, t^2).
  const std::vector<oracle::NPoly> param{oracle::from_lib(P("t", xyt)), oracle::from_lib(P("t^2", xyt)),
                                         oracle::from_lib(P("t", xyt))};
  for (const auto& g : e2.groebner_basis()) EXPECT_TRUE(oracle::compose(oracle::from_lib(g), param, 3).empty());
}

TEST(Groebner, KrullDimensionExamples) {
  const VariableSet five{"a", "b", "c", "d", "e"};
  EXPECT_EQ(krull_dimension(Ideal::zero(five)), 5);
  EXPECT_EQ(krull_dimension(I({"x", "y"})), 1);
  const VariableSet r{"x", "y", "z", "F", "G"};
  EXPECT_EQ(krull_dimension(I({"x*F + y^2", "x*G + z^2"}, r)), 3);
  EXPECT_EQ(krull_dimension(I({"x*F + y^2", "x*F + y^2"}, r)), 4);
  EXPECT_EQ(krull_dimension(Ideal::unit(kXYZ)), -1);
  EXPECT_EQ(krull_dimension(I({"x^2", "y^3", "z"})), 0);
}

TEST(Groebner, LocalMembershipExamples) {
  EXPECT_TRUE(local_membership(P("x", kXY), I({"x*(1+y)"}, kXY), I({"x", "y"}, kXY)));
  EXPECT_FALSE(I({"x*(1+y)"}, kXY).contains(P("x", kXY)));
  EXPECT_TRUE(local_membership(Polynomial::zero(kXY), I({"x"}, kXY), I({"x", "y"}, kXY)));
  EXPECT_THROW(local_membership(P("x"), I({"x"}), I({"x + y"})), StructuralError);

  for (std::size_t n = 2; n <= 8; ++n) {
    const auto inst = example::build(3, n, 1);
    const auto fs = inst.f_polynomials();
    const Ideal m = inst.maximal_ideal();
    // Explicit combination: y^2 = f - x*tail.
    const Polynomial tail = divide_exact(fs[0] - P("y^2"), inst.x());
    EXPECT_EQ(fs[0] - inst.x() * tail, P("y^2"));
    EXPECT_TRUE(local_membership(P("y^2"), Ideal(inst.ring, {fs[0], inst.x()}, inst.ring_order()), m));

    const Polynomial xn = inst.x().pow(static_cast<unsigned>(n));
    const Ideal level(inst.ring, {fs[0], fs[1], xn}, inst.ring_order());
    const bool member = local_membership(inst.xi_polynomial(), level, m);
    EXPECT_FALSE(member) << "N = " << n;
    if (n <= 4) {
      // The level ideal contains m^(n+2), so membership modulo that power is
      // exact; the linear system has no solution.
      std::vector<oracle::NPoly> gens{oracle::from_lib(fs[0]), oracle::from_lib(fs[1]), oracle::from_lib(xn)};
      EXPECT_FALSE(oracle::member_mod_power_of_maximal(oracle::from_lib(inst.xi_polynomial()), gens, 3,
                                                       static_cast<unsigned>(n + 2)));
      EXPECT_TRUE(oracle::member_mod_power_of_maximal(oracle::from_lib(fs[0] * P("1 + y")), gens, 3,
                                                      static_cast<unsigned>(n + 2)));
    }
  }
}

TEST(Groebner, LocalMembershipCertificateCarriesColonBasis) {
  const auto cert = local_membership_certificate(P("x", kXY), I({"x*(1+y)"}, kXY), I({"x", "y"}, kXY));
  EXPECT_TRUE(cert.member);
  EXPECT_EQ(cert.colon_basis, polys({"y + 1"}, kXY));
}

TEST(GroebnerProperties, MembershipAgreesWithLinearAlgebraOracle) {
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<int> nvars_dist(1, 3), ngens_dist(1, 3), coin(0, 1);
  int members = 0, non_members = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nvars = static_cast<std::size_t>(nvars_dist(rng));
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(nvars);
    const VariableSet vars(names);
    std::vector<oracle::NPoly> gens;
    std::vector<Polynomial> lib_gens;
    const int ngens = ngens_dist(rng);
    for (int i = 0; i < ngens; ++i) {
      auto g = oracle::random_poly(rng, nvars, 3, 3);
      if (g.empty()) g = oracle::NPoly{{oracle::Exps(nvars, 1), 1}};
      gens.push_back(g);
      lib_gens.push_back(oracle::to_lib(g, vars));
    }
    oracle::NPoly p;
    if (coin(rng)) {
      for (const auto& g : gens) p = oracle::add(p, oracle::mul(oracle::random_poly(rng, nvars, 1, 2), g));
    } else {
      p = oracle::random_poly(rng, nvars, 3, 3);
    }
    const Ideal ideal(vars, lib_gens);
    const auto& gb = ideal.groebner_basis();
    ASSERT_TRUE(satisfies_buchberger_criterion(gb, ideal.order()));
    const bool lib = ideal.contains(oracle::to_lib(p, vars));
    const bool ref = oracle::bounded_membership(p, gens, nvars);
    EXPECT_EQ(lib, ref) << "trial " << trial << ": p = " << oracle::to_lib(p, vars).to_string();
    (lib ? members : non_members)++;
  }
  EXPECT_GT(members, 50);
  EXPECT_GT(non_members, 50);
}

TEST(GroebnerProperties, AuditNormalFormColonAndSaturation) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Polynomial> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(oracle::to_lib(oracle::random_poly(rng, 3, 3, 3), kXYZ));
    const Ideal ideal(kXYZ, gens);
    const auto& gb = ideal.groebner_basis();
    EXPECT_TRUE(satisfies_buchberger_criterion(gb, ideal.order()));
    const Polynomial p = oracle::to_lib(oracle::random_poly(rng, 3, 4, 5), kXYZ);
    const Polynomial nf = ideal.normal_form(p);
    EXPECT_EQ(ideal.normal_form(nf), nf);
    EXPECT_TRUE(ideal.contains(p - nf));

    Polynomial h = oracle::to_lib(oracle::random_poly(rng, 3, 2, 2), kXYZ);
    if (h.is_zero()) h = P("x");
    const Ideal q = colon(ideal, h);
    EXPECT_TRUE(q.contains(ideal));
    for (const auto& g : q.groebner_basis()) EXPECT_TRUE(ideal.normal_form(g * h).is_zero());
    EXPECT_TRUE(satisfies_buchberger_criterion(q.groebner_basis(), q.order()));

    const Ideal s = saturate(ideal, h);
    EXPECT_TRUE(ideal_equal(saturate(s, h), s));
    EXPECT_TRUE(s.contains(q));
  }
}

TEST(GroebnerProperties, ReducedBasesAreMonicSortedAndInterreduced) {
  std::mt19937_64 rng(3);
  for (const auto& order : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::weighted({1, 2, 3})}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Polynomial> gens;
      for (int i = 0; i < 3; ++i) gens.push_back(oracle::to_lib(oracle::random_poly(rng, 3, 3, 3), kXYZ));
      const auto gb = reduced_groebner_basis(gens, order);
      for (std::size_t i = 0; i < gb.size(); ++i) {
        EXPECT_EQ(leading_coefficient(gb[i], order), 1);
        if (i) EXPECT_LT(order.compare(leading_monomial(gb[i - 1], order), leading_monomial(gb[i], order)), 0);
        for (std::size_t j = 0; j < gb.size(); ++j) {
          if (i == j) continue;
          for (const auto& [m, c] : gb[i].terms()) EXPECT_FALSE(leading_monomial(gb[j], order).divides(m));
        }
      }
    }
  }
}

TEST(GroebnerProperties, DeterministicAcrossRunsAndThreads) {
  std::mt19937_64 rng(123);
  std::vector<std::vector<Polynomial>> inputs;
  for (int i = 0; i < 12; ++i) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(oracle::to_lib(oracle::random_poly(rng, 3, 3, 4), kXYZ));
    inputs.push_back(gens);
  }
  std::vector<std::string> serial;
  for (const auto& gens : inputs) serial.push_back(to_json(reduced_groebner_basis(gens, MonomialOrder::grevlex())).dump());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    EXPECT_EQ(to_json(reduced_groebner_basis(inputs[i], MonomialOrder::grevlex())).dump(), serial[i]);

  for (unsigned threads : {2u, 4u, 8u}) {
    std::vector<std::string> parallel(inputs.size());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < inputs.size(); i += threads)
          parallel[i] = to_json(reduced_groebner_basis(inputs[i], MonomialOrder::grevlex())).dump();
      });
    for (auto& th : pool) th.join();
    EXPECT_EQ(parallel, serial) << threads << " threads";
  }

  // A shared Ideal fills its cache once, whichever thread asks first.
  const Ideal shared(kXYZ, inputs[0]);
  std::vector<const std::vector<Polynomial>*> seen(8);
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) pool.emplace_back([&, t] { seen[t] = &shared.groebner_basis(); });
  for (auto& th : pool) th.join();
  for (auto* p : seen) EXPECT_EQ(p, seen[0]);
  EXPECT_EQ(to_json(*seen[0]).dump(), serial[0]);
}

TEST(IdealJson, RoundTripAndTextGenerators) {
  const Ideal ideal = I({"x^2 - y", "x*z + 1/3"}, kXYZ, MonomialOrder::weighted({1, 2, 2}));
  const auto j = to_json(ideal);
  EXPECT_EQ(j["order"], "wgrevlex:1,2,2");
  const Ideal back = ideal_from_json(j);
  EXPECT_EQ(back.order(), ideal.order());
  EXPECT_EQ(back.generators(), ideal.generators());
  const auto text = nlohmann::json::parse(R"({"vars": ["x","y"], "generators": ["x*y - 1", "y^2"]})");
  const Ideal parsed = ideal_from_json(text);
  EXPECT_TRUE(parsed.is_unit());
  EXPECT_EQ(parsed.generators(), polys({"x*y - 1", "y^2"}, kXY));
  EXPECT_THROW(ideal_from_json(nlohmann::json::parse(R"({"generators": ["x"]})")), ParseError);
}
