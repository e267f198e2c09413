#include <doctest.h>

#include "obk/curve_system.hpp"
#include "obk/homology.hpp"
#include "obk/rewrite.hpp"
#include "obk/sp.hpp"

using namespace obk;

namespace {

IMat mat2(long a, long b, long c, long d) {
  IMat m(2, 2);
  m << Int(a), Int(b), Int(c), Int(d);
  return m;
}

TwistWord full_chain_word(int g) {
  std::string text;
  for (const auto& n : blue_curves(g)) text += n + " ";
  return parse_word(text);
}

}  // namespace

TEST_CASE("default system shapes") {
  CHECK_THROWS_AS(default_humphries_system(0), Error);

  CurveSystem g1 = default_humphries_system(1);
  CHECK(g1.has_curve("b1"));
  CHECK(g1.has_curve("a1"));
  CHECK(!g1.has_curve("b2"));
  CHECK(g1.geom_int(CurveRef::plain("b1"), CurveRef::plain("a1")) == 1);

  CurveSystem g2 = default_humphries_system(2);
  CHECK(g2.geom_int(CurveRef::plain("b2"), CurveRef::plain("a2")) == 1);
  CHECK(g2.geom_int(CurveRef::plain("b2"), CurveRef::plain("c1")) == 0);
  CHECK(g2.geom_int(CurveRef::plain("b2"), CurveRef::plain("a1")) == 0);

  // the 2g+1 generator curves plus the boundary-parallel d: 8 at g=3
  CurveSystem g3 = default_humphries_system(3);
  CHECK(g3.curves().size() == 8);
  CHECK(blue_curves(3).size() == 6);
  CHECK(g3.has_curve("b2"));
  CHECK(g3.has_curve("d"));
  int consecutive = 0;
  auto spine = blue_curves(3);
  for (std::size_t i = 0; i + 1 < spine.size(); ++i)
    if (g3.geom_int(CurveRef::plain(spine[i]), CurveRef::plain(spine[i + 1])) == 1) ++consecutive;
  CHECK(consecutive == 5);
}

TEST_CASE("twist matrices at genus one") {
  CurveSystem sys = default_humphries_system(1);
  CHECK(int_equal(twist_matrix(sys, CurveRef::plain("a1"), 1), mat2(1, -1, 0, 1)));
  CHECK(int_equal(twist_matrix(sys, CurveRef::plain("b1"), 1), mat2(1, 0, 1, 1)));
  CHECK(is_int_identity(twist_matrix(sys, CurveRef::plain("a1"), 0)));
  CHECK_THROWS_AS(twist_matrix(sys, CurveRef::plain("zz"), 1), Error);
}

TEST_CASE("rho frozen values") {
  CurveSystem sys = default_humphries_system(1);
  CHECK(is_int_identity(rho(sys, TwistWord())));
  CHECK(int_equal(rho(sys, parse_word("a1 b1")), mat2(0, -1, 1, 1)));
  // braid relation at homology level
  CHECK(int_equal(rho(sys, parse_word("a1 b1 a1")), rho(sys, parse_word("b1 a1 b1"))));
}

TEST_CASE("twist matrix inverses and symplectic invariant") {
  for (int g : {1, 2, 3}) {
    CurveSystem sys = default_humphries_system(g);
    for (const auto& c : blue_curves(g)) {
      for (long long k : {-3LL, -1LL, 1LL, 2LL}) {
        IMat t = twist_matrix(sys, CurveRef::plain(c), k);
        IMat ti = twist_matrix(sys, CurveRef::plain(c), -k);
        CHECK(is_int_identity((t * ti).eval()));
        CHECK(is_symplectic(t, g));
        CHECK(int_equal(sp_inverse(t, g), ti));
      }
    }
  }
}

TEST_CASE("braid and commutation properties across genus") {
  for (int g : {2, 3}) {
    CurveSystem sys = default_humphries_system(g);
    auto spine = blue_curves(g);
    for (std::size_t i = 0; i + 1 < spine.size(); ++i) {
      TwistWord aba = parse_word(spine[i] + " " + spine[i + 1] + " " + spine[i]);
      TwistWord bab = parse_word(spine[i + 1] + " " + spine[i] + " " + spine[i + 1]);
      CHECK(int_equal(rho(sys, aba), rho(sys, bab)));
    }
    // disjoint pairs commute and pair to zero
    for (std::size_t i = 0; i < spine.size(); ++i)
      for (std::size_t j = i + 2; j < spine.size(); ++j) {
        TwistWord ab = parse_word(spine[i] + " " + spine[j]);
        TwistWord ba = parse_word(spine[j] + " " + spine[i]);
        CHECK(int_equal(rho(sys, ab), rho(sys, ba)));
        CHECK(sys.pairing(sys.hom_class(spine[i]), sys.hom_class(spine[j])) == 0);
      }
  }
}

TEST_CASE("boundary chain identity") {
  for (int g : {1, 2, 3}) {
    CurveSystem sys = default_humphries_system(g);
    IMat m = int_pow(rho(sys, full_chain_word(g)), 4 * g + 2);
    CHECK(is_int_identity(m));
  }
}

TEST_CASE("registered three-chain relation") {
  CurveSystem sys = extended_humphries_system(2);
  const Chain& ch = sys.chain("d-chain");
  REQUIRE(ch.members.size() == 3);
  IMat lhs = int_pow(rho(sys, parse_word("b1 a1 c1")), 4);
  IMat rhs = rho(sys, parse_word("d1 d2"));
  CHECK(int_equal(lhs, rhs));
}

TEST_CASE("conjugated chain relation at genus three") {
  CurveSystem sys = extended_humphries_system(3);
  const Chain& ch = sys.chain("e-chain");
  REQUIRE(ch.members.size() == 3);
  // [b2(a2)] = rho(b2) [a2]
  IVec img = sys.hom_class(ch.members[0]);
  IVec expect = IVec::Zero(6);
  expect(1) = 1;  // alpha_2
  expect(4) = 1;  // beta_2
  CHECK(int_equal(img, expect));

  IMat lhs = int_pow(rho(sys, parse_word("b2(a2) c2 a3")), 4);
  IMat rhs = rho(sys, parse_word("e1 e2"));
  CHECK(int_equal(lhs, rhs));
}

TEST_CASE("torelli detection") {
  CurveSystem g1 = default_humphries_system(1);
  CHECK(is_torelli(g1, TwistWord()));
  CHECK(!is_torelli(g1, parse_word("a1")));

  CurveSystem g3 = extended_humphries_system(3);
  CHECK(is_torelli(g3, parse_word("b1 a1 c1 b1 a1 c1 b1 a1 c1 b1 a1 c1 d1^-1 d2^-1")));
  CHECK(is_torelli(g3, parse_word("e1 e2^-1")));
  CHECK(!is_torelli(g3, parse_word("e1 e2")));
}

TEST_CASE("image curve letters conjugate at matrix level") {
  CurveSystem sys = default_humphries_system(3);
  TwistWord image = parse_word("b2(a2)^2");
  TwistWord expanded = parse_word("b2 a2^2 b2^-1");
  CHECK(int_equal(rho(sys, image), rho(sys, expanded)));
}

TEST_CASE("uses_only is syntactic and frame-aware") {
  auto blue = blue_curves(2);
  CHECK(uses_only(parse_word("b1 a1"), blue));
  CHECK(!uses_only(parse_word("b1 b2"), blue));
  CHECK(!uses_only(parse_word("b2(a2)"), blue));  // frame uses b2
  CHECK(uses_only(TwistWord(), blue));
}

TEST_CASE("normalize merges, cancels, sorts disjoint letters") {
  CurveSystem g2 = default_humphries_system(2);
  CHECK(normalize(g2, parse_word("a1 a1^-1")).empty());
  CHECK(normalize(g2, parse_word("a2 a1")) == parse_word("a1 a2"));
  CHECK(normalize(g2, parse_word("a1^2 a1^-1")) == parse_word("a1"));
  // b1 a1 do not commute; order preserved
  CHECK(normalize(g2, parse_word("a1 b1")) == parse_word("a1 b1"));
  // swap then merge: a2 a1 a2 -> a1 a2 a2 -> a1 a2^2
  CHECK(normalize(g2, parse_word("a2 a1 a2")) == parse_word("a1 a2^2"));
}

TEST_CASE("normalize preserves rho on random words") {
  CurveSystem sys = default_humphries_system(3);
  auto names = blue_curves(3);
  names.push_back("b2");
  std::uint64_t state = 12345;
  auto next = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  };
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Letter> letters;
    int len = 1 + next() % 9;
    for (int i = 0; i < len; ++i) {
      std::string c = names[next() % names.size()];
      long long p = static_cast<long long>(next() % 5) - 2;
      if (p == 0) p = 1;
      letters.push_back(Letter{CurveRef::plain(c), p});
    }
    TwistWord w = TwistWord::of(letters);
    TwistWord nw = normalize(sys, w);
    CHECK(int_equal(rho(sys, w), rho(sys, nw)));
    CHECK(normalize(sys, nw) == nw);  // idempotent
  }
}

TEST_CASE("chain relation rewrites") {
  CurveSystem sys = extended_humphries_system(2);
  const Chain& ch = sys.chain("d-chain");

  TwistWord power = parse_word("b1 a1 c1").pow(4);
  TwistWord folded = apply_chain_relation(sys, power, ch, ChainDirection::Forward);
  CHECK(folded == parse_word("d1 d2"));

  TwistWord back = apply_chain_relation(sys, folded, ch, ChainDirection::Backward);
  CHECK(back == power);

  // rho unchanged in context
  TwistWord host = parse_word("a2").concat(power).concat(parse_word("b2^2"));
  TwistWord rewritten = apply_chain_relation(sys, host, ch, ChainDirection::Forward);
  CHECK(int_equal(rho(sys, host), rho(sys, rewritten)));

  CHECK_THROWS_AS(apply_chain_relation(sys, parse_word("b1 a1"), ch, ChainDirection::Forward),
                  Error);
}

TEST_CASE("chain rewrite preserves rho on the genus-three conjugated chain") {
  CurveSystem sys = extended_humphries_system(3);
  const Chain& ch = sys.chain("e-chain");
  TwistWord power = parse_word("b2(a2) c2 a3").pow(4);
  TwistWord folded = apply_chain_relation(sys, power, ch, ChainDirection::Forward);
  CHECK(folded == parse_word("e1 e2"));
  CHECK(int_equal(rho(sys, power), rho(sys, folded)));
}

TEST_CASE("curve system json round trip") {
  CurveSystem sys = extended_humphries_system(3);
  std::string doc = curve_system_to_json(sys);
  CurveSystem back = curve_system_from_json(doc);
  CHECK(back.genus() == 3);
  CHECK(back.curves() == sys.curves());
  CHECK(int_equal(rho(back, parse_word("b1 a1 c1 a2")), rho(sys, parse_word("b1 a1 c1 a2"))));
  CHECK(back.chains().size() == sys.chains().size());
}

TEST_CASE("invariant violations are rejected") {
  CurveSystem sys(1, {"x", "y"});
  IVec ex = IVec::Zero(2), ey = IVec::Zero(2);
  ex(0) = 1;
  ey(1) = 1;
  sys.set_hom_class("x", ex);
  sys.set_hom_class("y", ey);
  sys.set_geom_int("x", "y", 0);  // but <x,y> = 1
  CHECK_THROWS_AS(sys.validate(), Error);
}
