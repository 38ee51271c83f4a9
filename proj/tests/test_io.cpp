#include <string>

#include "doctest.h"
#include "grla/io.hpp"
#include "test_algebras.hpp"

using namespace grla;
using namespace grla::testing;

namespace {

const char* kSl2Text = R"(# the three-dimensional simple algebra
kind liealg
dim 3
labels e f h
cartan h
form 0 1 0
form 1 0 0
form 0 0 2
bracket e f 0 0 1
bracket h e 2 0 0
bracket h f 0 -2 0
)";

const char* kGrrsText = R"(kind grrs
ambient 2
nullity 1
gram 2 0
gram 0 0
embed 0
embed 1
family
base 0 0
modulus 1
residue 0
end
family
base 1 0
modulus 1
residue 0
end
family
base -1 0
modulus 1
residue 0
end
)";

}  // namespace

TEST_CASE("algebra documents round-trip") {
  InputDocument doc = parse_input(kSl2Text);
  CHECK(doc.kind == InputKind::liealg);
  REQUIRE(doc.algebra.has_value());
  CHECK(doc.algebra->dim() == 3);
  CHECK(doc.algebra->labels() == std::vector<std::string>{"e", "f", "h"});
  CHECK(doc.algebra->cartan() == std::vector<size_t>{2});

  StructLieAlgebra ref = sl2();
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK(doc.algebra->basis_bracket(i, j) == ref.basis_bracket(i, j));
  CHECK(doc.algebra->form_matrix() == ref.form_matrix());

  // The serialized form is canonical: serializing its own parse is a no-op.
  std::string once = serialize_input(doc);
  InputDocument again = parse_input(once);
  CHECK(serialize_input(again) == once);
  CHECK(again.algebra->form_matrix() == ref.form_matrix());
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK(again.algebra->basis_bracket(i, j) == ref.basis_bracket(i, j));
}

TEST_CASE("root-system documents round-trip") {
  InputDocument doc = parse_input(kGrrsText);
  CHECK(doc.kind == InputKind::grrs);
  REQUIRE(doc.grrs.has_value());
  CHECK(doc.grrs->ambient_dim() == 2);
  CHECK(doc.grrs->null_rank() == 1);
  CHECK(doc.grrs->families().size() == 3);
  CHECK(grrs_member(qv({1, 3}), *doc.grrs));
  CHECK_FALSE(grrs_member(qv({2, 0}), *doc.grrs));

  std::string once = serialize_input(doc);
  InputDocument again = parse_input(once);
  CHECK(serialize_input(again) == once);
  CHECK(again.grrs->gram() == doc.grrs->gram());
  CHECK(again.grrs->families().size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(again.grrs->families()[i].base == doc.grrs->families()[i].base);
    CHECK(again.grrs->families()[i].support == doc.grrs->families()[i].support);
  }
}

TEST_CASE("fixed-point documents carry the twist data") {
  std::string text = std::string(kSl2Text);
  // Reuse the algebra block under the fixedpoint kind and append the twist.
  text.replace(text.find("kind liealg"), 11, "kind fixedpoint");
  text +=
      "order 2\n"
      "omega -1 0 0\n"
      "omega 0 -1 0\n"
      "omega 0 0 1\n"
      "window 3\n";
  InputDocument doc = parse_input(text);
  CHECK(doc.kind == InputKind::fixedpoint);
  CHECK(doc.order == 2);
  REQUIRE(doc.omega.has_value());
  CHECK(doc.omega->at(0, 0) == Scalar(-1));
  CHECK(doc.omega->at(2, 2) == Scalar(1));
  CHECK(doc.window == 3);

  std::string once = serialize_input(doc);
  InputDocument again = parse_input(once);
  CHECK(serialize_input(again) == once);
  CHECK(*again.omega == *doc.omega);
  CHECK(again.order == 2);
  CHECK(again.window == 3);
}

TEST_CASE("scalar entries may use the twist's root of unity") {
  std::string text =
      "kind fixedpoint\n"
      "dim 1\n"
      "labels x\n"
      "cartan x\n"
      "form 1\n"
      "order 4\n"
      "omega z\n";
  InputDocument doc = parse_input(text);
  CHECK(doc.omega->at(0, 0) == Scalar::root_of_unity(4));
  std::string once = serialize_input(doc);
  CHECK(parse_input(once).omega->at(0, 0) == Scalar::root_of_unity(4));
}

TEST_CASE("parse errors carry the line number") {
  CHECK_THROWS_AS(parse_input(""), ParseError);
  CHECK_THROWS_AS(parse_input("dim 3\n"), ParseError);         // missing kind header
  CHECK_THROWS_AS(parse_input("kind nonsense\n"), ParseError);

  std::string bad_key = "kind liealg\ndim 1\nflavor spicy\n";
  try {
    parse_input(bad_key);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("flavor") != std::string::npos);
  }

  // Wrong entry count on a row.
  CHECK_THROWS_AS(parse_input("kind liealg\ndim 2\nlabels a b\ncartan a\nform 1\n"), ParseError);
}

TEST_CASE("schema errors") {
  // Non-symmetric gram matrix.
  std::string asym =
      "kind grrs\nambient 2\nnullity 1\n"
      "gram 2 1\ngram 0 0\nembed 0\nembed 1\n"
      "family\nbase 1 0\nmodulus 1\nresidue 0\nend\n";
  CHECK_THROWS_AS(parse_input(asym), SchemaError);

  // Unknown label in a bracket.
  std::string bad_label =
      "kind liealg\ndim 2\nlabels a b\ncartan a\n"
      "form 1 0\nform 0 1\nbracket a q 0 1\n";
  CHECK_THROWS_AS(parse_input(bad_label), SchemaError);

  // Duplicate labels.
  std::string dup = "kind liealg\ndim 2\nlabels a a\ncartan a\nform 1 0\nform 0 1\n";
  CHECK_THROWS_AS(parse_input(dup), SchemaError);

  // A family with no base.
  std::string no_base =
      "kind grrs\nambient 1\nnullity 1\ngram 0\nembed 1\n"
      "family\nmodulus 1\nresidue 0\nend\n";
  CHECK_THROWS_AS(parse_input(no_base), SchemaError);

  // Missing order on a fixed-point document.
  std::string no_order =
      "kind fixedpoint\ndim 1\nlabels x\ncartan x\nform 1\nomega 1\n";
  CHECK_THROWS_AS(parse_input(no_order), SchemaError);
}

TEST_CASE("malformed numbers") {
  std::string div0 = "kind liealg\ndim 1\nlabels x\ncartan x\nform 1/0\n";
  CHECK_THROWS_AS(parse_input(div0), BadScalar);

  std::string junk = "kind liealg\ndim 1\nlabels x\ncartan x\nform 1.5\n";
  CHECK_THROWS_AS(parse_input(junk), BadScalar);

  std::string bad_int =
      "kind grrs\nambient 1\nnullity 1\ngram 0\nembed 1\n"
      "family\nbase 0\nmodulus 1\nresidue x\nend\n";
  CHECK_THROWS_AS(parse_input(bad_int), BadScalar);
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text =
      "# header comment\n\nkind liealg   # trailing\n"
      "dim 1\nlabels x\ncartan x\nform 0\n";
  InputDocument doc = parse_input(text);
  CHECK(doc.algebra->dim() == 1);
}
