// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/chain.hpp>
#include <fa12/rng.hpp>
#include <fa12/suite.hpp>

#include <benchmark/benchmark.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

using namespace fa12;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const std::string& contract_source() {
    static const std::string text =
        read_file(FA12CHECK_SOURCE_DIR "/fixtures/fa12.tz");
    return text;
}

// One originated fa12.tz instance plus a recorder, reused as a snapshot
// source by the injection benchmarks.
struct BenchChain {
    ChainState chain;
    Address target;
    Address recorder;
};

const BenchChain& tz_chain() {
    static const BenchChain bench = [] {
        const ContractScript script = parse_contract_text(contract_source());
        const auto program =
            std::make_shared<const TypedProgram>(typecheck(script));
        const StorageLayout layout = load_storage_layout(
            FA12CHECK_SOURCE_DIR "/fixtures/fa12.layout");
        const SuiteConfig config;
        BenchChain out;
        out.target = out.chain.originate(MichelsonInstance{
            program,
            synthesize_storage(script.storage_ty, layout, config.universe,
                               config.initial_balance),
            layout});
        out.recorder = out.chain.originate(
            RecorderInstance{Ty::int_(), false, "", Mutez(0)});
        return out;
    }();
    return bench;
}

LedgerStorage populated_ledger() {
    LedgerStorage sto;
    Rng rng(5);
    for (int i = 0; i < 64; ++i) {
        const Address owner("acct_" + std::to_string(i));
        sto = set_balance(sto, owner, TokenAmount(rng.below(100000)));
        sto = set_allowance(sto, owner,
                            Address("acct_" + std::to_string((i + 1) % 64)),
                            TokenAmount(rng.below(1000)));
    }
    return sto;
}

void BM_MichelineParse(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(parse_micheline(contract_source()));
}

void BM_Typecheck(benchmark::State& state) {
    const ContractScript script = parse_contract_text(contract_source());
    for (auto _ : state)
        benchmark::DoNotOptimize(typecheck(script));
}

void BM_OracleTransfer(benchmark::State& state) {
    const LedgerStorage sto = populated_ledger();
    const CallEnv env{Address("acct_1"), Address("token"), Mutez(0)};
    const Address from("acct_1");
    const Address to("acct_2");
    const TokenAmount value(17);
    for (auto _ : state)
        benchmark::DoNotOptimize(spec_transfer(env, from, to, value, sto));
}

void BM_InjectTransfer(benchmark::State& state) {
    const BenchChain& bench = tz_chain();
    const EntrypointCall call =
        TransferCall{Address("alice"), Address("bob"), TokenAmount(1)};
    for (auto _ : state) {
        ChainState chain = bench.chain;  // snapshot, as the harness does
        benchmark::DoNotOptimize(inject_call(chain, Address("alice"),
                                             bench.target, call, Mutez(0)));
    }
}

void BM_InjectViewWithCallback(benchmark::State& state) {
    const BenchChain& bench = tz_chain();
    const EntrypointCall call = GetBalanceCall{
        Address("alice"), ContractRef{bench.recorder, ""}};
    for (auto _ : state) {
        ChainState chain = bench.chain;
        benchmark::DoNotOptimize(inject_call(chain, Address("alice"),
                                             bench.target, call, Mutez(0)));
    }
}

void BM_ObserveViews(benchmark::State& state) {
    const BenchChain& bench = tz_chain();
    const SuiteConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            observe_abstract_storage(bench.chain, bench.target,
                                     config.universe, ObservationMode::views));
}

void BM_ObserveDirect(benchmark::State& state) {
    const BenchChain& bench = tz_chain();
    const SuiteConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            observe_abstract_storage(bench.chain, bench.target,
                                     config.universe,
                                     ObservationMode::direct));
}

void BM_GenerateSequence(benchmark::State& state) {
    SuiteConfig config;
    config.sequence_length = 20;
    const std::vector<EntrypointSig> entrypoints =
        model_standard()->param_describe();
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            generate_call_sequence(mix64(seed++), config, entrypoints));
}

void BM_SuiteStandardModel(benchmark::State& state) {
    SuiteConfig config;
    config.seed = 42;
    config.num_sequences = static_cast<std::size_t>(state.range(0));
    config.sequence_length = 10;

    const std::shared_ptr<const ContractModel> model = model_standard();
    const ModelStorage storage = model->init(ModelInitConfig{
        config.universe, config.initial_balance, std::nullopt});
    SuiteTarget target;
    target.name = "builtin:standard";
    target.entrypoints = model->param_describe();
    target.originate = [&model, &storage](ChainState& chain) {
        return chain.originate(ModelInstance{model, storage});
    };

    for (auto _ : state)
        benchmark::DoNotOptimize(run_conformance_suite(target, config));
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(config.num_sequences) *
                            static_cast<std::int64_t>(config.sequence_length));
}

}  // namespace

BENCHMARK(BM_MichelineParse)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Typecheck)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OracleTransfer);
BENCHMARK(BM_InjectTransfer)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_InjectViewWithCallback)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ObserveViews)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ObserveDirect)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GenerateSequence)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SuiteStandardModel)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
