// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/oracle.hpp>

#include <gtest/gtest.h>

using namespace fa12;

namespace {

const Address alice{"alice"};
const Address bob{"bob"};
const Address carol{"carol"};
const std::vector<Address> universe{alice, bob, carol};
const ContractRef sink{Address("sink"), ""};

TokenAmount tok(std::uint64_t v) { return TokenAmount(v); }

CallEnv env_from(const Address& sender, std::int64_t amount = 0) {
    return CallEnv{sender, Address("token"), Mutez(amount)};
}

// alice holds 100, bob holds 30, alice lets bob spend 20.
LedgerStorage base_storage() {
    LedgerStorage sto;
    sto = set_balance(sto, alice, tok(100));
    sto = set_balance(sto, bob, tok(30));
    sto = set_allowance(sto, alice, bob, tok(20));
    return sto;
}

}  // namespace

TEST(calls, names_and_classes) {
    const EntrypointCall transfer = TransferCall{alice, bob, tok(1)};
    const EntrypointCall approve = ApproveCall{bob, tok(1)};
    const EntrypointCall get_allowance = GetAllowanceCall{alice, bob, sink};
    const EntrypointCall get_balance = GetBalanceCall{alice, sink};
    const EntrypointCall get_total = GetTotalSupplyCall{sink};
    const EntrypointCall other = OtherCall{"mint", {{"to", "alice"}}};

    EXPECT_EQ(call_name(transfer), "transfer");
    EXPECT_EQ(call_name(approve), "approve");
    EXPECT_EQ(call_name(get_allowance), "getAllowance");
    EXPECT_EQ(call_name(get_balance), "getBalance");
    EXPECT_EQ(call_name(get_total), "getTotalSupply");
    EXPECT_EQ(call_name(other), "mint");

    EXPECT_FALSE(is_view_call(transfer));
    EXPECT_FALSE(is_view_call(approve));
    EXPECT_TRUE(is_view_call(get_allowance));
    EXPECT_TRUE(is_view_call(get_balance));
    EXPECT_TRUE(is_view_call(get_total));
    EXPECT_FALSE(is_view_call(other));

    EXPECT_TRUE(is_standard_call(transfer));
    EXPECT_TRUE(is_standard_call(get_total));
    EXPECT_FALSE(is_standard_call(other));
}

TEST(rules, ids_round_trip) {
    const Rule all[] = {
        Rule::InsufficientBalance,      Rule::InsufficientAllowance,
        Rule::MustFailInsufficientBalance, Rule::MustFailInsufficientAllowance,
        Rule::WrongPostStorage,         Rule::ViewStorageMutated,
        Rule::ViewWrongValue,           Rule::ViewPassthrough,
        Rule::ViewExtraOps,             Rule::UnsafeAllowanceChange,
        Rule::TotalSupplyMismatch,      Rule::StorageInvalid,
    };
    for (Rule rule : all) {
        const auto back = rule_from_id(rule_id(rule));
        ASSERT_TRUE(back.has_value()) << rule_id(rule);
        EXPECT_EQ(*back, rule);
    }
    EXPECT_EQ(rule_id(Rule::InsufficientBalance),
              std::string("insufficient-balance"));
    EXPECT_EQ(rule_id(Rule::ViewPassthrough), std::string("view-passthrough"));
    EXPECT_FALSE(rule_from_id("no-such-rule").has_value());
}

TEST(spec_transfer, owner_spend_moves_tokens) {
    const auto out =
        spec_transfer(env_from(alice), alice, bob, tok(40), base_storage());
    ASSERT_FALSE(out.is_must_fail());
    EXPECT_EQ(get_balance(out.required_storage(), alice), tok(60));
    EXPECT_EQ(get_balance(out.required_storage(), bob), tok(70));
    // Owner spending never touches allowances, not even their own.
    EXPECT_EQ(get_allowance(out.required_storage(), alice, bob), tok(20));
    EXPECT_FALSE(out.required_ops().exact);
}

TEST(spec_transfer, exact_balance_spend_is_allowed) {
    const auto out =
        spec_transfer(env_from(alice), alice, bob, tok(100), base_storage());
    ASSERT_FALSE(out.is_must_fail());
    EXPECT_EQ(get_balance(out.required_storage(), alice), tok(0));
    EXPECT_EQ(get_balance(out.required_storage(), bob), tok(130));
}

TEST(spec_transfer, overdraft_must_fail) {
    const auto out =
        spec_transfer(env_from(alice), alice, bob, tok(101), base_storage());
    ASSERT_TRUE(out.is_must_fail());
    ASSERT_EQ(out.violated().size(), 1u);
    EXPECT_EQ(out.violated()[0], Rule::InsufficientBalance);
}

TEST(spec_transfer, delegated_spend_consumes_allowance) {
    const auto out =
        spec_transfer(env_from(bob), alice, carol, tok(15), base_storage());
    ASSERT_FALSE(out.is_must_fail());
    EXPECT_EQ(get_balance(out.required_storage(), alice), tok(85));
    EXPECT_EQ(get_balance(out.required_storage(), carol), tok(15));
    EXPECT_EQ(get_allowance(out.required_storage(), alice, bob), tok(5));
}

TEST(spec_transfer, delegated_overspend_must_fail) {
    const auto out =
        spec_transfer(env_from(bob), alice, carol, tok(21), base_storage());
    ASSERT_TRUE(out.is_must_fail());
    ASSERT_EQ(out.violated().size(), 1u);
    EXPECT_EQ(out.violated()[0], Rule::InsufficientAllowance);
}

TEST(spec_transfer, both_preconditions_reported) {
    const auto out =
        spec_transfer(env_from(carol), alice, bob, tok(500), base_storage());
    ASSERT_TRUE(out.is_must_fail());
    ASSERT_EQ(out.violated().size(), 2u);
    EXPECT_EQ(out.violated()[0], Rule::InsufficientBalance);
    EXPECT_EQ(out.violated()[1], Rule::InsufficientAllowance);
}

TEST(spec_transfer, self_transfer_nets_to_no_change) {
    const auto out =
        spec_transfer(env_from(alice), alice, alice, tok(60), base_storage());
    ASSERT_FALSE(out.is_must_fail());
    EXPECT_EQ(get_balance(out.required_storage(), alice), tok(100));
    EXPECT_EQ(get_total_supply(out.required_storage()), tok(130));
}

TEST(spec_transfer, delegated_self_transfer_still_burns_allowance) {
    // from == to yet the spender's allowance shrinks: a regular transfer.
    const auto out =
        spec_transfer(env_from(bob), alice, alice, tok(10), base_storage());
    ASSERT_FALSE(out.is_must_fail());
    EXPECT_EQ(get_balance(out.required_storage(), alice), tok(100));
    EXPECT_EQ(get_allowance(out.required_storage(), alice, bob), tok(10));
}

TEST(spec_transfer, self_overdraft_must_fail) {
    const auto out =
        spec_transfer(env_from(alice), alice, alice, tok(101), base_storage());
    ASSERT_TRUE(out.is_must_fail());
    EXPECT_EQ(out.violated()[0], Rule::InsufficientBalance);
}

TEST(spec_transfer, zero_value_always_may_succeed) {
    // 0 <= balance and 0 <= allowance hold even for absent accounts.
    const auto owner =
        spec_transfer(env_from(carol), carol, alice, tok(0), base_storage());
    EXPECT_FALSE(owner.is_must_fail());
    const auto delegated =
        spec_transfer(env_from(carol), bob, alice, tok(0), base_storage());
    ASSERT_FALSE(delegated.is_must_fail());
    EXPECT_EQ(delegated.required_storage(), base_storage());
}

TEST(spec_approve, records_sender_as_owner) {
    const auto out =
        spec_approve(env_from(carol), alice, tok(9), base_storage());
    ASSERT_FALSE(out.is_must_fail());
    EXPECT_EQ(get_allowance(out.required_storage(), carol, alice), tok(9));
    EXPECT_EQ(get_allowance(out.required_storage(), alice, carol), tok(0));
    EXPECT_FALSE(out.required_ops().exact);
}

TEST(spec_approve, default_mode_allows_any_change) {
    const auto out =
        spec_approve(env_from(alice), bob, tok(7), base_storage());
    ASSERT_FALSE(out.is_must_fail());
    EXPECT_EQ(get_allowance(out.required_storage(), alice, bob), tok(7));
}

TEST(spec_approve, strict_mode_rejects_nonzero_to_nonzero) {
    const OracleConfig strict{true};
    const auto blocked =
        spec_approve(env_from(alice), bob, tok(7), base_storage(), strict);
    ASSERT_TRUE(blocked.is_must_fail());
    ASSERT_EQ(blocked.violated().size(), 1u);
    EXPECT_EQ(blocked.violated()[0], Rule::UnsafeAllowanceChange);

    const auto to_zero =
        spec_approve(env_from(alice), bob, tok(0), base_storage(), strict);
    EXPECT_FALSE(to_zero.is_must_fail());
    const auto from_zero =
        spec_approve(env_from(bob), alice, tok(7), base_storage(), strict);
    EXPECT_FALSE(from_zero.is_must_fail());
}

TEST(spec_views, balance_callback_is_pinned_exactly) {
    const auto out = spec_get_balance(env_from(carol, 5), alice, sink,
                                      base_storage());
    ASSERT_FALSE(out.is_must_fail());
    EXPECT_EQ(out.required_storage(), base_storage());
    ASSERT_TRUE(out.required_ops().exact);
    ASSERT_EQ(out.required_ops().ops.size(), 1u);
    const EmittedOperation& op = out.required_ops().ops[0];
    EXPECT_EQ(op.destination, sink);
    EXPECT_EQ(op.value, "100");
    EXPECT_EQ(op.amount, Mutez(5));
}

TEST(spec_views, absent_owner_reads_zero) {
    const auto out =
        spec_get_balance(env_from(alice), carol, sink, base_storage());
    EXPECT_EQ(out.required_ops().ops[0].value, "0");
}

TEST(spec_views, allowance_is_directional) {
    const auto forward = spec_get_allowance(env_from(carol), alice, bob, sink,
                                            base_storage());
    EXPECT_EQ(forward.required_ops().ops[0].value, "20");
    const auto reverse = spec_get_allowance(env_from(carol), bob, alice, sink,
                                            base_storage());
    EXPECT_EQ(reverse.required_ops().ops[0].value, "0");
}

TEST(spec_views, total_supply_reports_tracked_value) {
    // The tracked total is reported as stored, even when it disagrees with
    // the balance sum; the mismatch is a suite-level invariant instead.
    const auto skewed = LedgerStorage::from_raw(base_storage().balances(), {},
                                                tok(9999));
    const auto out = spec_get_total_supply(env_from(alice), sink, skewed);
    EXPECT_EQ(out.required_ops().ops[0].value, "9999");
}

TEST(spec_outcome, dispatches_and_leaves_other_calls_unconstrained) {
    const auto transfer = spec_outcome(TransferCall{alice, bob, tok(101)},
                                       env_from(alice), base_storage());
    EXPECT_TRUE(transfer.is_must_fail());

    const auto other = spec_outcome(OtherCall{"mint", {}}, env_from(alice),
                                    base_storage());
    EXPECT_FALSE(other.is_must_fail());
    EXPECT_FALSE(other.required_ops().exact);
}

TEST(conformance, correct_transfer_passes) {
    const EntrypointCall call = TransferCall{alice, bob, tok(40)};
    LedgerStorage post = set_balance(base_storage(), alice, tok(60));
    post = set_balance(post, bob, tok(70));
    const Verdict v =
        check_conformance(call, env_from(alice), base_storage(),
                          ImplResult::success({}), post, universe);
    EXPECT_EQ(v.kind, Verdict::Kind::Pass);
}

TEST(conformance, wrong_post_storage_is_flagged) {
    const EntrypointCall call = TransferCall{alice, bob, tok(40)};
    // The implementation credited 41 instead of 40.
    LedgerStorage post = set_balance(base_storage(), alice, tok(60));
    post = set_balance(post, bob, tok(71));
    const Verdict v =
        check_conformance(call, env_from(alice), base_storage(),
                          ImplResult::success({}), post, universe);
    ASSERT_EQ(v.kind, Verdict::Kind::Violation);
    EXPECT_EQ(v.rule, Rule::WrongPostStorage);
    EXPECT_NE(v.detail.find("balance(bob) = 71, expected 70"),
              std::string::npos);
}

TEST(conformance, any_failure_passes_per_call) {
    const EntrypointCall fine = TransferCall{alice, bob, tok(40)};
    const Verdict v =
        check_conformance(fine, env_from(alice), base_storage(),
                          ImplResult::failure(), std::nullopt, universe);
    EXPECT_EQ(v.kind, Verdict::Kind::Pass);
}

TEST(conformance, succeeding_when_failure_is_required_violates) {
    const EntrypointCall call = TransferCall{alice, bob, tok(101)};
    // No post-state needed to convict a forbidden success.
    const Verdict v =
        check_conformance(call, env_from(alice), base_storage(),
                          ImplResult::success({}), std::nullopt, universe);
    ASSERT_EQ(v.kind, Verdict::Kind::Violation);
    EXPECT_EQ(v.rule, Rule::MustFailInsufficientBalance);
}

TEST(conformance, delegated_overspend_success_maps_to_allowance_rule) {
    const EntrypointCall call = TransferCall{alice, carol, tok(21)};
    const Verdict v =
        check_conformance(call, env_from(bob), base_storage(),
                          ImplResult::success({}), base_storage(), universe);
    ASSERT_EQ(v.kind, Verdict::Kind::Violation);
    EXPECT_EQ(v.rule, Rule::MustFailInsufficientAllowance);
}

TEST(conformance, missing_post_state_raises) {
    const EntrypointCall call = TransferCall{alice, bob, tok(40)};
    EXPECT_THROW(check_conformance(call, env_from(alice), base_storage(),
                                   ImplResult::success({}), std::nullopt,
                                   universe),
                 ObservationIncomplete);
}

TEST(conformance, view_judged_by_its_single_callback) {
    const EntrypointCall call = GetBalanceCall{alice, sink};
    const auto ok = ImplResult::success({{sink, Mutez(5), "100"}});
    EXPECT_EQ(check_conformance(call, env_from(carol, 5), base_storage(), ok,
                                base_storage(), universe)
                  .kind,
              Verdict::Kind::Pass);

    const auto wrong_value = ImplResult::success({{sink, Mutez(5), "99"}});
    const Verdict v1 =
        check_conformance(call, env_from(carol, 5), base_storage(),
                          wrong_value, base_storage(), universe);
    ASSERT_EQ(v1.kind, Verdict::Kind::Violation);
    EXPECT_EQ(v1.rule, Rule::ViewWrongValue);

    const auto kept_tez = ImplResult::success({{sink, Mutez(0), "100"}});
    const Verdict v2 =
        check_conformance(call, env_from(carol, 5), base_storage(), kept_tez,
                          base_storage(), universe);
    ASSERT_EQ(v2.kind, Verdict::Kind::Violation);
    EXPECT_EQ(v2.rule, Rule::ViewPassthrough);
    EXPECT_NE(v2.detail.find("forwarded 0 mutez, expected 5"),
              std::string::npos);

    const auto chatty = ImplResult::success(
        {{sink, Mutez(5), "100"}, {sink, Mutez(0), "100"}});
    const Verdict v3 =
        check_conformance(call, env_from(carol, 5), base_storage(), chatty,
                          base_storage(), universe);
    ASSERT_EQ(v3.kind, Verdict::Kind::Violation);
    EXPECT_EQ(v3.rule, Rule::ViewExtraOps);

    const auto silent = ImplResult::success({});
    EXPECT_EQ(check_conformance(call, env_from(carol, 5), base_storage(),
                                silent, base_storage(), universe)
                  .rule,
              Rule::ViewExtraOps);
}

TEST(conformance, view_must_not_mutate_storage) {
    const EntrypointCall call = GetBalanceCall{alice, sink};
    const auto ok_ops = ImplResult::success({{sink, Mutez(0), "100"}});
    const LedgerStorage mutated =
        set_balance(base_storage(), alice, tok(99));
    const Verdict v = check_conformance(call, env_from(carol), base_storage(),
                                        ok_ops, mutated, universe);
    ASSERT_EQ(v.kind, Verdict::Kind::Violation);
    EXPECT_EQ(v.rule, Rule::ViewStorageMutated);
}

TEST(conformance, nonstandard_calls_are_never_judged) {
    const EntrypointCall call = OtherCall{"selfdestruct", {}};
    const Verdict v =
        check_conformance(call, env_from(alice), base_storage(),
                          ImplResult::success({}), std::nullopt, universe);
    EXPECT_EQ(v.kind, Verdict::Kind::Pass);
}

TEST(conformance, strict_approve_convicts_nonzero_rewrite) {
    const EntrypointCall call = ApproveCall{bob, tok(7)};
    const OracleConfig strict{true};
    const Verdict v =
        check_conformance(call, env_from(alice), base_storage(),
                          ImplResult::success({}), std::nullopt, universe,
                          strict);
    ASSERT_EQ(v.kind, Verdict::Kind::Violation);
    EXPECT_EQ(v.rule, Rule::UnsafeAllowanceChange);
}
