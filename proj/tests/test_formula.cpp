#include <gtest/gtest.h>

#include "fragmc/errors.hpp"
#include "fragmc/formula.hpp"
#include "fragmc/parser.hpp"
#include "fragmc/syntax.hpp"
#include "support.hpp"

using namespace fragmc;

namespace {

StateFormula P(const char* s) { return parse_formula(s); }
StateFormula p() { return atom("p"); }
StateFormula q() { return atom("q"); }

}  // namespace

TEST(Parse, NestedCtl) {
  EXPECT_EQ(P("AG EF p"), forall(always(embed(exists(eventually(embed(p())))))));
  EXPECT_EQ(P("true"), top());
  EXPECT_EQ(P("E[p U (q & ~r)]"), exists(until(embed(p()), embed(conj(q(), negate(atom("r")))))));
}

TEST(Parse, PairedAndSeparateSpellingsAgree) {
  EXPECT_EQ(P("AX p"), P("A X p"));
  EXPECT_EQ(P("EFi p"), P("E Fi p"));
  EXPECT_EQ(P("EFi p"), exists(inf_often(embed(p()))));
  EXPECT_EQ(P("AGi p"), forall(almost_always(embed(p()))));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(P("p | q & r"), disj(p(), conj(q(), atom("r"))));
  EXPECT_EQ(P("~p & q"), conj(negate(p()), q()));
  EXPECT_EQ(P("EX p & q"), conj(EX(p()), q()));
  EXPECT_EQ(P("A(G p & F q)"), forall(conj(always(embed(p())), eventually(embed(q())))));
}

TEST(Parse, QuotedAtoms) {
  EXPECT_EQ(P("\"s_2^01\""), atom("s_2^01"));
  EXPECT_EQ(P("\"a\\\"b\""), atom("a\"b"));
  EXPECT_EQ(to_string(atom("d 3")), "\"d 3\"");
  EXPECT_EQ(to_string(atom("EF")), "\"EF\"");
  EXPECT_EQ(to_string(atom("d_3")), "d_3");
}

TEST(Parse, Errors) {
  try {
    P("p &\n  X q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(P("(p"), ParseError);
  EXPECT_THROW(P("E[p U q"), ParseError);
  EXPECT_THROW(P("p $ q"), ParseError);
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("\"unterminated"), ParseError);
  EXPECT_THROW(P("E[p q]"), ParseError);
}

TEST(Print, Canonical) {
  EXPECT_EQ(to_string(P("AG EF p")), "AG EF p");
  EXPECT_EQ(to_string(P("E [ p U q ]")), "E[p U q]");
  EXPECT_EQ(to_string(P("A(G p & F q)")), "A(G p & F q)");
  EXPECT_EQ(to_string(P("(p | q) & r")), "(p | q) & r");
  EXPECT_EQ(to_string(P("p | (q | r)")), "p | (q | r)");
  EXPECT_EQ(to_string(P("E (p & q)")), "E (p & q)");
}

TEST(Print, RoundTripRandom) {
  fx::Rng rng(7);
  fx::GenOptions ctl{{"EX", "AX", "EF", "AF", "EG", "AG", "EU", "AU", "ER", "AR", "EFi", "AGi"}};
  fx::GenOptions plus{{"X", "F", "G", "U", "R", "Fi", "Gi"}};
  plus.plus = true;
  for (int i = 0; i < 500; ++i) {
    for (const auto& o : {ctl, plus}) {
      StateFormula f = fx::random_formula(rng, o);
      EXPECT_EQ(parse_formula(to_string(f)), f) << to_string(f);
    }
  }
}

TEST(Syntax, Families) {
  EXPECT_EQ(syntactic_class(P("p & ~q")), Family::Propositional);
  EXPECT_EQ(syntactic_class(P("AG EF p")), Family::CTL);
  EXPECT_EQ(syntactic_class(P("A(G p & F q)")), Family::CTLplus);
  EXPECT_EQ(syntactic_class(P("A G F p")), Family::CTLstar);
  EXPECT_EQ(syntactic_class(P("EFi p")), Family::ECTL);
  EXPECT_EQ(syntactic_class(P("E(Fi p & G q)")), Family::ECTLplus);
  EXPECT_EQ(syntactic_class(P("E X X p")), Family::CTLplus);
  EXPECT_EQ(syntactic_class(P("E ~F p")), Family::CTLplus);
}

TEST(Syntax, OperatorSets) {
  EXPECT_EQ(operator_set(P("AG EF p")), (OperatorSet{"AG", "EF"}));
  EXPECT_TRUE(operator_set(P("p & ~q")).empty());
  EXPECT_EQ(operator_set(P("A(G p & F q)")), (OperatorSet{"A", "G", "F"}));
  EXPECT_EQ(separate_operators(P("AG EF p")), (OperatorSet{"A", "G", "E", "F"}));
}

TEST(Syntax, Discipline) {
  EXPECT_EQ(negation_discipline(P("EF p")), Discipline::Mon);
  EXPECT_EQ(negation_discipline(P("EF ~p")), Discipline::An);
  EXPECT_EQ(negation_discipline(P("~EF p")), Discipline::Full);
  EXPECT_EQ(negation_discipline(P("EF ~(p & q)")), Discipline::Pos);
  EXPECT_EQ(negation_discipline(P("E ~F p")), Discipline::Full);
}

TEST(Syntax, Nnf) {
  EXPECT_EQ(to_nnf(P("~EX p")), P("AX ~p"));
  EXPECT_EQ(to_nnf(P("~E[p U q]")), P("A[~p R ~q]"));
  EXPECT_EQ(to_nnf(P("~(p & EF q)")), P("~p | AG ~q"));
  EXPECT_EQ(to_nnf(P("~EFi p")), P("AGi ~p"));
  EXPECT_EQ(to_nnf(P("~A(G p & ~X q)")), P("E(F ~p | X q)"));
}

TEST(Syntax, NnfProperties) {
  fx::Rng rng(11);
  fx::GenOptions o{{"EX", "AX", "EF", "AF", "EG", "AG", "EU", "AU", "ER", "AR", "EFi", "AGi", "AFi", "EGi"}};
  for (int i = 0; i < 500; ++i) {
    StateFormula f = fx::random_formula(rng, o);
    StateFormula n = to_nnf(f);
    EXPECT_LE(negation_discipline(n), Discipline::An);
    EXPECT_EQ(syntactic_class(n), syntactic_class(f));
    for (const auto& op : operator_set(n)) {
      const auto ops = operator_set(f);
      EXPECT_TRUE(ops.count(op) || ops.count(dual_token(op))) << op << " in " << to_string(f);
    }
  }
}

TEST(Syntax, EctlLiftAndLower) {
  EXPECT_EQ(lift_to_ectl(P("AF (p & EG q)")), P("AFi (p & EGi q)"));
  EXPECT_EQ(lower_from_ectl(P("AFi (p & EGi q)")), P("AF (p & EG q)"));
  EXPECT_TRUE(has_future_or_globally(P("EX EF p")));
  EXPECT_FALSE(has_future_or_globally(P("EX AX p")));
}

TEST(Syntax, ProfileStrings) {
  EXPECT_EQ(parse_family("ctlplus"), Family::CTLplus);
  EXPECT_EQ(parse_family("CTL+"), Family::CTLplus);
  EXPECT_EQ(parse_discipline("pos"), Discipline::Pos);
  EXPECT_FALSE(parse_discipline("neg").has_value());
}
