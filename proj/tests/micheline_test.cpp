// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/micheline.hpp>

#include <gtest/gtest.h>

using namespace fa12;

namespace {

MichelineNode parsed(const std::string& text) {
    return parse_micheline(text);
}

std::string round_trip(const std::string& text) {
    return print_micheline(parse_micheline(text));
}

}  // namespace

TEST(micheline, integer_literals) {
    const auto node = parsed("42");
    ASSERT_EQ(node.kind, MichelineNode::Kind::int_lit);
    EXPECT_EQ(node.int_value, 42);
    EXPECT_EQ(parsed("-7").int_value, -7);
    EXPECT_EQ(parsed("123456789012345678901234567890").int_value,
              BigInt("123456789012345678901234567890"));
}

TEST(micheline, string_literals) {
    const auto node = parsed("\"hello\"");
    ASSERT_EQ(node.kind, MichelineNode::Kind::string_lit);
    EXPECT_EQ(node.text, "hello");
    EXPECT_EQ(parsed("\"a\\\"b\"").text, "a\"b");
    EXPECT_EQ(parsed("\"line\\nbreak\"").text, "line\nbreak");
    EXPECT_EQ(parsed("\"back\\\\slash\"").text, "back\\slash");
}

TEST(micheline, bytes_literals) {
    const auto node = parsed("0xdeadBEEF");
    ASSERT_EQ(node.kind, MichelineNode::Kind::bytes_lit);
    EXPECT_EQ(node.data, (std::vector<std::uint8_t>{0xde, 0xad, 0xbe, 0xef}));
    EXPECT_EQ(print_micheline(node), "0xdeadbeef");
    EXPECT_THROW(parsed("0xabc"), ParseError);  // odd digit count
}

TEST(micheline, prims_with_args_and_annots) {
    const auto node = parsed("(Pair %wrap 1 \"two\")");
    ASSERT_EQ(node.kind, MichelineNode::Kind::prim);
    EXPECT_EQ(node.text, "Pair");
    ASSERT_EQ(node.annots.size(), 1u);
    EXPECT_EQ(node.annots[0], "%wrap");
    ASSERT_EQ(node.args.size(), 2u);
    EXPECT_EQ(node.args[0].int_value, 1);
    EXPECT_EQ(node.args[1].text, "two");
}

TEST(micheline, sequences_and_semicolons) {
    const auto node = parsed("{ 1 ; 2 ; 3 }");
    ASSERT_EQ(node.kind, MichelineNode::Kind::seq);
    ASSERT_EQ(node.args.size(), 3u);
    EXPECT_EQ(node.args[2].int_value, 3);
    // Trailing semicolons are tolerated.
    EXPECT_EQ(parsed("{ 1 ; 2 ; }").args.size(), 2u);
    EXPECT_TRUE(parsed("{}").args.empty());
}

TEST(micheline, toplevel_with_semicolons_is_a_sequence) {
    const auto node = parsed("parameter int ; storage int ; code {}");
    ASSERT_EQ(node.kind, MichelineNode::Kind::seq);
    ASSERT_EQ(node.args.size(), 3u);
    EXPECT_TRUE(node.args[0].is_prim("parameter"));
    EXPECT_TRUE(node.args[2].is_prim("code"));
}

TEST(micheline, comments_are_skipped) {
    const auto node = parsed("# heading\n(Pair # inline\n 1 /* block\n */ 2)");
    ASSERT_EQ(node.args.size(), 2u);
    EXPECT_EQ(node.args[1].int_value, 2);
}

TEST(micheline, nested_application_needs_parens) {
    // A prim argument that itself has arguments must be parenthesized.
    const auto node = parsed("(Pair (Some 1) None)");
    EXPECT_TRUE(node.args[0].is_prim("Some"));
    EXPECT_TRUE(node.args[1].is_prim("None"));
    // Without parens, Some swallows both arguments at the top level.
    const auto flat = parsed("Some 1");
    ASSERT_EQ(flat.args.size(), 1u);
}

TEST(micheline, source_positions_are_tracked) {
    const auto node = parsed("{\n  Pair 1 2\n}");
    ASSERT_EQ(node.args.size(), 1u);
    EXPECT_EQ(node.args[0].line, 2);
    EXPECT_EQ(node.args[0].col, 3);
}

TEST(micheline, parse_errors_carry_positions) {
    try {
        parse_micheline("{ Pair 1 ");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_GE(e.line(), 1);
        EXPECT_NE(std::string(e.what()).find("parse error at"),
                  std::string::npos);
    }
    // An empty document is a valid empty toplevel sequence.
    const auto empty = parse_micheline("");
    EXPECT_EQ(empty.kind, MichelineNode::Kind::seq);
    EXPECT_TRUE(empty.args.empty());
    EXPECT_THROW(parsed(")"), ParseError);
    EXPECT_THROW(parsed("\"unterminated"), ParseError);
    EXPECT_THROW(parsed("1 2"), ParseError);  // two toplevel expressions
}

TEST(micheline, canonical_printing) {
    EXPECT_EQ(round_trip("{DUP;DROP}"), "{ DUP ; DROP }");
    // Parens are only required (and only printed) in argument position.
    EXPECT_EQ(round_trip("( Pair   1\n\t2 )"), "Pair 1 2");
    EXPECT_EQ(round_trip("PUSH int 5"), "PUSH int 5");
    EXPECT_EQ(round_trip("\"esc\\\"aped\""), "\"esc\\\"aped\"");
    EXPECT_EQ(round_trip("(pair %x (int :t) nat)"), "pair %x (int :t) nat");
}

TEST(micheline, print_parse_round_trip_is_identity) {
    const char* samples[] = {
        "42",
        "\"text with \\\\ and \\\"\"",
        "0x00ff",
        "(Pair 1 (Pair \"a\" 0x02))",
        "{ PUSH int 1 ; IF {} { DROP ; UNIT } }",
        "(map (pair address address) int)",
        "Elt \"a\" 1",
    };
    for (const char* sample : samples) {
        const auto once = parse_micheline(sample);
        const auto twice = parse_micheline(print_micheline(once));
        EXPECT_TRUE(once.equals(twice)) << sample;
    }
}

TEST(micheline, structural_equality_ignores_positions) {
    const auto a = parsed("(Pair 1 2)");
    const auto b = parsed("(Pair\n 1\n 2)");
    EXPECT_TRUE(a.equals(b));
    EXPECT_FALSE(a.equals(parsed("(Pair 1 3)")));
    EXPECT_FALSE(a.equals(parsed("(Pair 1 2 3)")));
    // Annotations are structural.
    EXPECT_FALSE(parsed("(int %a)").equals(parsed("(int %b)")));
}
