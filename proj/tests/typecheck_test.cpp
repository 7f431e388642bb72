// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/michelson.hpp>

#include <gtest/gtest.h>

using namespace fa12;

namespace {

TypedProgram checked(const std::string& text) {
    return typecheck(parse_contract_text(text));
}

std::string wrap_code(const std::string& parameter, const std::string& storage,
                      const std::string& body) {
    return "parameter " + parameter + " ; storage " + storage + " ; code { " +
           body + " }";
}

}  // namespace

TEST(types, elaboration) {
    EXPECT_EQ(elaborate_type(parse_micheline("int")).tag, Ty::Tag::int_t);
    const Ty map = elaborate_type(
        parse_micheline("(map (pair address address) int)"));
    ASSERT_EQ(map.tag, Ty::Tag::map_t);
    EXPECT_EQ(map.args[0].tag, Ty::Tag::pair_t);
    EXPECT_EQ(map.args[1].tag, Ty::Tag::int_t);
    EXPECT_THROW(elaborate_type(parse_micheline("rational")), UnknownType);
    // Map keys must be comparable; operation is not even pushable.
    EXPECT_THROW(elaborate_type(parse_micheline("(map (list int) int)")),
                 TypeError);
    EXPECT_THROW(elaborate_type(parse_micheline("(int 1)")), TypeError);
}

TEST(types, equality_ignores_annotations) {
    const Ty a = elaborate_type(parse_micheline("(pair %x int nat)"));
    const Ty b = elaborate_type(parse_micheline("(pair int nat)"));
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == elaborate_type(parse_micheline("(pair nat int)")));
    EXPECT_EQ(a.str(), "pair int nat");
}

TEST(types, comparability) {
    EXPECT_TRUE(is_comparable(Ty::address()));
    EXPECT_TRUE(is_comparable(Ty::pair(Ty::address(), Ty::address())));
    EXPECT_FALSE(is_comparable(Ty::list(Ty::int_())));
    EXPECT_FALSE(is_comparable(Ty::operation()));
    EXPECT_TRUE(is_pushable(Ty::pair(Ty::int_(), Ty::string())));
    EXPECT_FALSE(is_pushable(Ty::operation()));
    EXPECT_FALSE(is_pushable(Ty::contract(Ty::int_())));
    EXPECT_FALSE(is_pushable(Ty::big_map(Ty::int_(), Ty::int_())));
}

TEST(contract_sections, must_appear_exactly_once_each) {
    EXPECT_NO_THROW(parse_contract_text(
        "storage int ; code { CDR ; NIL operation ; PAIR } ; parameter unit"));
    EXPECT_THROW(parse_contract_text("parameter unit ; storage int"),
                 MissingSection);
    EXPECT_THROW(
        parse_contract_text(
            "parameter unit ; parameter int ; storage int ; code {}"),
        DuplicateSection);
}

TEST(entrypoints, found_by_field_annotation) {
    const Ty param = elaborate_type(parse_micheline(
        "(or (or (pair %transfer address (pair address int))"
        "        (pair %approve address int))"
        "    (pair %getBalance address (contract int)))"));

    const auto transfer = find_entrypoint(param, "transfer");
    ASSERT_TRUE(transfer.has_value());
    EXPECT_EQ(transfer->rights, (std::vector<bool>{false, false}));
    EXPECT_EQ(transfer->ty,
              elaborate_type(parse_micheline("(pair address (pair address int))")));

    const auto approve = find_entrypoint(param, "approve");
    ASSERT_TRUE(approve.has_value());
    EXPECT_EQ(approve->rights, (std::vector<bool>{false, true}));

    const auto balance = find_entrypoint(param, "getBalance");
    ASSERT_TRUE(balance.has_value());
    EXPECT_EQ(balance->rights, (std::vector<bool>{true}));

    EXPECT_FALSE(find_entrypoint(param, "getAllowance").has_value());

    const auto root = find_entrypoint(param, "");
    ASSERT_TRUE(root.has_value());
    EXPECT_TRUE(root->rights.empty());
    EXPECT_EQ(root->ty, param);
}

TEST(typecheck, minimal_contract) {
    const auto program =
        checked("parameter unit ; storage int ; "
                "code { CDR ; NIL operation ; PAIR }");
    EXPECT_EQ(program.parameter_ty.tag, Ty::Tag::unit_t);
    EXPECT_EQ(program.storage_ty.tag, Ty::Tag::int_t);
    EXPECT_EQ(program.code.size(), 3u);
}

TEST(typecheck, numeric_flavors_are_resolved) {
    // nat + int is int; typechecking fixes the flavor, not the interpreter.
    EXPECT_NO_THROW(checked(wrap_code(
        "nat", "int", "CAR ; PUSH int -1 ; ADD ; NIL operation ; PAIR")));
    EXPECT_NO_THROW(checked(wrap_code(
        "mutez", "mutez", "CAR ; PUSH mutez 2 ; ADD ; NIL operation ; PAIR")));
    EXPECT_THROW(
        checked(wrap_code("mutez", "mutez",
                          "CAR ; PUSH int 2 ; ADD ; NIL operation ; PAIR")),
        TypeError);
    EXPECT_THROW(
        checked(wrap_code("string", "string",
                          "CAR ; PUSH string \"x\" ; ADD ; DROP ; CDR ; "
                          "NIL operation ; PAIR")),
        TypeError);
}

TEST(typecheck, compare_requires_matching_comparable_types) {
    EXPECT_NO_THROW(checked(wrap_code(
        "int", "bool",
        "CAR ; PUSH int 0 ; COMPARE ; EQ ; NIL operation ; PAIR")));
    EXPECT_THROW(checked(wrap_code(
                     "int", "bool",
                     "CAR ; PUSH nat 0 ; COMPARE ; EQ ; NIL operation ; PAIR")),
                 TypeError);
    EXPECT_THROW(
        checked(wrap_code("(list int)", "bool",
                          "CAR ; DUP ; COMPARE ; EQ ; NIL operation ; PAIR")),
        TypeError);
}

TEST(typecheck, stack_depth_is_enforced) {
    EXPECT_THROW(checked(wrap_code("unit", "int", "DROP ; DROP")), TypeError);
    EXPECT_THROW(
        checked(wrap_code("unit", "int", "CDR ; SWAP ; NIL operation ; PAIR")),
        TypeError);
    EXPECT_THROW(checked(wrap_code(
                     "unit", "int", "CDR ; DIG 3 ; NIL operation ; PAIR")),
                 TypeError);
    EXPECT_THROW(checked(wrap_code(
                     "unit", "int", "CDR ; DUP 2 ; DROP ; NIL operation ; PAIR")),
                 TypeError);
}

TEST(typecheck, branches_must_agree) {
    EXPECT_NO_THROW(checked(wrap_code(
        "bool", "int",
        "CAR ; IF { PUSH int 1 } { PUSH int 2 } ; NIL operation ; PAIR")));
    EXPECT_THROW(checked(wrap_code(
                     "bool", "int",
                     "CAR ; IF { PUSH int 1 } { PUSH nat 2 } ; "
                     "NIL operation ; PAIR")),
                 TypeError);
    EXPECT_THROW(
        checked(wrap_code("bool", "int",
                          "CAR ; IF { PUSH int 1 ; PUSH int 2 } { PUSH int 1 } "
                          "; NIL operation ; PAIR")),
        TypeError);
}

TEST(typecheck, failing_branches_unify_with_anything) {
    EXPECT_NO_THROW(checked(wrap_code(
        "bool", "int",
        "CAR ; IF { PUSH string \"no\" ; FAILWITH } { PUSH int 1 } ; "
        "NIL operation ; PAIR")));
    // Both branches may fail, making the whole code failing.
    EXPECT_NO_THROW(checked(wrap_code(
        "bool", "int",
        "CAR ; IF { PUSH string \"a\" ; FAILWITH } "
        "{ PUSH string \"b\" ; FAILWITH }")));
    EXPECT_NO_THROW(checked(
        "parameter unit ; storage int ; code { PUSH int 0 ; FAILWITH }"));
}

TEST(typecheck, if_left_and_if_none_destructure) {
    EXPECT_NO_THROW(checked(wrap_code(
        "(or int string)", "int",
        "CAR ; IF_LEFT {} { DROP ; PUSH int 0 } ; NIL operation ; PAIR")));
    EXPECT_NO_THROW(checked(wrap_code(
        "(option int)", "int",
        "CAR ; IF_NONE { PUSH int 0 } {} ; NIL operation ; PAIR")));
}

TEST(typecheck, map_operations) {
    EXPECT_NO_THROW(checked(wrap_code(
        "(pair address int)", "(map address int)",
        "UNPAIR ; UNPAIR ; DUP ; DUG 3 ; DIG 2 ; DUP ; DUG 3 ; SWAP ; GET ; "
        "IF_NONE { PUSH int 0 } {} ; ADD ; SOME ; DIG 2 ; UPDATE ; "
        "NIL operation ; PAIR")));
    // GET key type must match the map key type.
    EXPECT_THROW(checked(wrap_code(
                     "(map address int)", "(option int)",
                     "CAR ; PUSH int 5 ; GET ; NIL operation ; PAIR")),
                 TypeError);
    // UPDATE value must be an option of the map value type.
    EXPECT_THROW(
        checked(wrap_code("(map address int)", "(map address int)",
                          "CAR ; PUSH int 1 ; PUSH address \"a\" ; UPDATE ; "
                          "NIL operation ; PAIR")),
        TypeError);
}

TEST(typecheck, transfer_tokens_typing) {
    EXPECT_NO_THROW(checked(wrap_code(
        "(contract int)", "unit",
        "CAR ; PUSH mutez 1 ; PUSH int 42 ; TRANSFER_TOKENS ; "
        "NIL operation ; SWAP ; CONS ; PUSH unit Unit ; SWAP ; PAIR")));
    // Parameter value type must match the contract's parameter type.
    EXPECT_THROW(checked(wrap_code(
                     "(contract int)", "unit",
                     "CAR ; PUSH mutez 1 ; PUSH string \"x\" ; "
                     "TRANSFER_TOKENS ; NIL operation ; SWAP ; CONS ; "
                     "PUSH unit Unit ; SWAP ; PAIR")),
                 TypeError);
}

TEST(typecheck, final_stack_shape_is_checked) {
    EXPECT_THROW(checked(wrap_code("unit", "int", "CDR")), TypeError);
    EXPECT_THROW(
        checked(wrap_code("unit", "int", "CDR ; NIL operation ; PAIR ; DUP")),
        TypeError);
    EXPECT_THROW(checked(wrap_code("unit", "int",
                                   "DROP ; PUSH nat 0 ; NIL operation ; PAIR")),
                 TypeError);
}

TEST(typecheck, unsupported_instructions_are_reported_with_location) {
    try {
        checked(wrap_code("unit", "int",
                          "CDR ; LOOP {} ; NIL operation ; PAIR"));
        FAIL() << "expected UnsupportedInstruction";
    } catch (const UnsupportedInstruction& e) {
        EXPECT_NE(std::string(e.what()).find("LOOP"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("unsupported instruction at"),
                  std::string::npos);
    }
}

TEST(typecheck, push_literals_are_elaborated) {
    EXPECT_NO_THROW(checked(wrap_code(
        "unit", "(pair int (option string))",
        "DROP ; PUSH (pair int (option string)) (Pair 5 (Some \"x\")) ; "
        "NIL operation ; PAIR")));
    EXPECT_THROW(checked(wrap_code("unit", "int",
                                   "DROP ; PUSH int \"text\" ; "
                                   "NIL operation ; PAIR")),
                 TypeError);
    EXPECT_THROW(checked(wrap_code("unit", "nat",
                                   "DROP ; PUSH nat -5 ; "
                                   "NIL operation ; PAIR")),
                 TypeError);
}

TEST(typecheck, trace_records_one_line_per_instruction) {
    std::vector<std::string> trace;
    typecheck(parse_contract_text("parameter unit ; storage int ; "
                                  "code { CDR ; NIL operation ; PAIR }"),
              trace);
    ASSERT_EQ(trace.size(), 3u);
    EXPECT_NE(trace[0].find("CDR"), std::string::npos);
    EXPECT_NE(trace[0].find("[int]"), std::string::npos);
    EXPECT_NE(trace[1].find("list operation : int"), std::string::npos);
    EXPECT_NE(trace[2].find("pair (list operation) int"), std::string::npos);
}
