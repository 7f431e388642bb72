// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/models.hpp>

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

ModelStorage fresh(const ContractModel& model, std::uint64_t balance = 100) {
    return model.init(ModelInitConfig{universe, tok(balance), std::nullopt});
}

}  // namespace

TEST(standard_model, init_funds_every_universe_member) {
    const auto model = model_standard();
    const ModelStorage sto = fresh(*model);
    for (const Address& a : universe)
        EXPECT_EQ(get_balance(sto.ledger, a), tok(100));
    EXPECT_EQ(get_total_supply(sto.ledger), tok(300));
    EXPECT_EQ(model->abstract_view(sto), sto.ledger);
}

TEST(standard_model, declares_exactly_the_five_entrypoints) {
    const auto sigs = model_standard()->param_describe();
    ASSERT_EQ(sigs.size(), 5u);
    for (const EntrypointSig& sig : sigs)
        EXPECT_TRUE(sig.standard) << sig.name;
    EXPECT_EQ(sigs[0].name, "transfer");
}

TEST(standard_model, agrees_with_the_judge_on_a_spent_allowance) {
    const auto model = model_standard();
    const ModelStorage sto = fresh(*model);
    const CallEnv env = env_from(bob);

    const auto approved =
        model->step(env_from(alice), ApproveCall{bob, tok(20)}, sto);
    ASSERT_TRUE(approved.is_success);

    const EntrypointCall spend = TransferCall{alice, carol, tok(15)};
    const auto stepped = model->step(env, spend, approved.storage);
    ASSERT_TRUE(stepped.is_success);

    const auto outcome = spec_outcome(spend, env, approved.storage.ledger);
    ASSERT_FALSE(outcome.is_must_fail());
    EXPECT_EQ(stepped.storage.ledger, outcome.required_storage());
}

TEST(standard_model, rejects_what_the_judge_rejects) {
    const auto model = model_standard();
    const ModelStorage sto = fresh(*model);
    EXPECT_FALSE(
        model->step(env_from(alice), TransferCall{alice, bob, tok(101)}, sto)
            .is_success);
    EXPECT_FALSE(
        model->step(env_from(bob), TransferCall{alice, bob, tok(1)}, sto)
            .is_success);
    EXPECT_FALSE(model->step(env_from(alice), OtherCall{"mint", {}}, sto)
                     .is_success);
}

TEST(standard_model, self_transfer_consumes_allowance) {
    const auto model = model_standard();
    ModelStorage sto = fresh(*model);
    sto.ledger = set_allowance(sto.ledger, alice, bob, tok(30));
    const auto stepped = model->step(
        env_from(bob), TransferCall{alice, alice, tok(30)}, sto);
    ASSERT_TRUE(stepped.is_success);
    EXPECT_EQ(get_balance(stepped.storage.ledger, alice), tok(100));
    EXPECT_EQ(get_allowance(stepped.storage.ledger, alice, bob), tok(0));
}

TEST(standard_model, views_forward_the_attached_tez) {
    const auto model = model_standard();
    const ModelStorage sto = fresh(*model);
    const auto stepped =
        model->step(env_from(carol, 7), GetBalanceCall{alice, sink}, sto);
    ASSERT_TRUE(stepped.is_success);
    ASSERT_EQ(stepped.ops.size(), 1u);
    EXPECT_EQ(stepped.ops[0].destination, sink);
    EXPECT_EQ(stepped.ops[0].amount, Mutez(7));
    EXPECT_EQ(stepped.ops[0].value, "100");
    EXPECT_EQ(stepped.storage, sto);
}

TEST(managed_model, admin_defaults_to_first_universe_member) {
    const auto model = model_managed();
    const ModelStorage sto = fresh(*model);
    EXPECT_EQ(sto.admin, alice);
    EXPECT_FALSE(sto.paused);

    const ModelStorage custom = model->init(
        ModelInitConfig{universe, tok(1), carol});
    EXPECT_EQ(custom.admin, carol);
}

TEST(managed_model, declares_admin_entrypoints_as_nonstandard) {
    const auto sigs = model_managed()->param_describe();
    ASSERT_EQ(sigs.size(), 9u);
    std::size_t nonstandard = 0;
    for (const EntrypointSig& sig : sigs)
        if (!sig.standard)
            ++nonstandard;
    EXPECT_EQ(nonstandard, 4u);
}

TEST(managed_model, mint_grows_balance_and_tracked_total) {
    const auto model = model_managed();
    const ModelStorage sto = fresh(*model);
    const auto minted = model->step(
        env_from(alice), OtherCall{"mint", {{"to", "bob"}, {"value", "40"}}},
        sto);
    ASSERT_TRUE(minted.is_success);
    EXPECT_EQ(get_balance(minted.storage.ledger, bob), tok(140));
    EXPECT_EQ(get_total_supply(minted.storage.ledger), tok(340));
    EXPECT_EQ(sum_of_all_balances(minted.storage.ledger), tok(340));
}

TEST(managed_model, burn_is_bounded_by_the_balance) {
    const auto model = model_managed();
    const ModelStorage sto = fresh(*model);
    const auto burned = model->step(
        env_from(alice), OtherCall{"burn", {{"from", "bob"}, {"value", "100"}}},
        sto);
    ASSERT_TRUE(burned.is_success);
    EXPECT_EQ(get_balance(burned.storage.ledger, bob), tok(0));
    EXPECT_EQ(get_total_supply(burned.storage.ledger), tok(200));

    EXPECT_FALSE(
        model->step(env_from(alice),
                    OtherCall{"burn", {{"from", "bob"}, {"value", "101"}}}, sto)
            .is_success);
}

TEST(managed_model, mint_and_burn_require_the_admin) {
    const auto model = model_managed();
    const ModelStorage sto = fresh(*model);
    EXPECT_FALSE(model->step(env_from(bob),
                             OtherCall{"mint", {{"to", "bob"}, {"value", "1"}}},
                             sto)
                     .is_success);

    const auto handed = model->step(
        env_from(alice), OtherCall{"setAdmin", {{"addr", "bob"}}}, sto);
    ASSERT_TRUE(handed.is_success);
    EXPECT_TRUE(model->step(env_from(bob),
                            OtherCall{"mint", {{"to", "bob"}, {"value", "1"}}},
                            handed.storage)
                    .is_success);
}

TEST(managed_model, pause_blocks_only_the_standard_five) {
    const auto model = model_managed();
    const ModelStorage sto = fresh(*model);
    const auto paused = model->step(
        env_from(bob), OtherCall{"pause", {{"flag", "true"}}}, sto);
    ASSERT_TRUE(paused.is_success);
    EXPECT_TRUE(paused.storage.paused);

    EXPECT_FALSE(model->step(env_from(alice),
                             TransferCall{alice, bob, tok(1)}, paused.storage)
                     .is_success);
    EXPECT_FALSE(model->step(env_from(alice), GetBalanceCall{alice, sink},
                             paused.storage)
                     .is_success);
    EXPECT_TRUE(model->step(env_from(alice),
                            OtherCall{"mint", {{"to", "bob"}, {"value", "1"}}},
                            paused.storage)
                    .is_success);

    const auto resumed = model->step(
        env_from(bob), OtherCall{"pause", {{"flag", "false"}}}, paused.storage);
    ASSERT_TRUE(resumed.is_success);
    EXPECT_TRUE(model->step(env_from(alice), TransferCall{alice, bob, tok(1)},
                            resumed.storage)
                    .is_success);
}

TEST(managed_model, malformed_admin_args_fail_cleanly) {
    const auto model = model_managed();
    const ModelStorage sto = fresh(*model);
    EXPECT_FALSE(model->step(env_from(alice), OtherCall{"mint", {}}, sto)
                     .is_success);
    EXPECT_FALSE(
        model->step(env_from(alice),
                    OtherCall{"mint", {{"to", "bob"}, {"value", "x"}}}, sto)
            .is_success);
    EXPECT_FALSE(
        model->step(env_from(alice),
                    OtherCall{"pause", {{"flag", "maybe"}}}, sto)
            .is_success);
    EXPECT_FALSE(model->step(env_from(alice), OtherCall{"unknown", {}}, sto)
                     .is_success);
}

TEST(buggy_model, self_transfer_noop_diverges_only_on_self_transfers) {
    const auto model = model_legacy_buggy({.self_transfer_noop = true});
    ModelStorage sto = fresh(*model);
    sto.ledger = set_allowance(sto.ledger, alice, bob, tok(30));

    // Normal transfers still work.
    const auto normal =
        model->step(env_from(alice), TransferCall{alice, bob, tok(10)}, sto);
    ASSERT_TRUE(normal.is_success);
    EXPECT_EQ(get_balance(normal.storage.ledger, bob), tok(110));

    // A delegated self-transfer should burn allowance; the bug skips that.
    const auto buggy =
        model->step(env_from(bob), TransferCall{alice, alice, tok(30)}, sto);
    ASSERT_TRUE(buggy.is_success);
    EXPECT_EQ(get_allowance(buggy.storage.ledger, alice, bob), tok(30));

    // And it even "succeeds" where failure is required.
    const auto overdraft =
        model->step(env_from(alice), TransferCall{alice, alice, tok(101)}, sto);
    EXPECT_TRUE(overdraft.is_success);
}

TEST(buggy_model, view_keeps_tokens_zeroes_the_callback_amount) {
    const auto model = model_legacy_buggy({.view_keeps_tokens = true});
    const ModelStorage sto = fresh(*model);
    const auto stepped =
        model->step(env_from(carol, 9), GetBalanceCall{alice, sink}, sto);
    ASSERT_TRUE(stepped.is_success);
    ASSERT_EQ(stepped.ops.size(), 1u);
    EXPECT_EQ(stepped.ops[0].amount, Mutez(0));
    EXPECT_EQ(stepped.ops[0].value, "100");
}

TEST(buggy_model, without_flags_it_matches_the_standard_model) {
    const auto buggy = model_legacy_buggy({});
    const auto standard = model_standard();
    const ModelStorage sto = fresh(*buggy);
    const EntrypointCall call = TransferCall{alice, bob, tok(10)};
    const auto a = buggy->step(env_from(alice), call, sto);
    const auto b = standard->step(env_from(alice), call, sto);
    ASSERT_TRUE(a.is_success);
    ASSERT_TRUE(b.is_success);
    EXPECT_EQ(a.storage, b.storage);
}
