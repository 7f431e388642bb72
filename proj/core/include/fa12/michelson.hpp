// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <fa12/micheline.hpp>
#include <fa12/oracle.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fa12 {

/// A type of the supported Michelson grammar. Field annotations from the
/// source (%name) are carried along for entrypoint discovery but ignored by
/// type equality.
struct Ty {
    enum class Tag {
        nat_t,
        int_t,
        mutez_t,
        address_t,
        bool_t,
        string_t,
        bytes_t,
        unit_t,
        pair_t,
        or_t,
        option_t,
        map_t,
        big_map_t,
        list_t,
        contract_t,
        operation_t,
    };

    static Ty nat();
    static Ty int_();
    static Ty mutez();
    static Ty address();
    static Ty bool_();
    static Ty string();
    static Ty bytes();
    static Ty unit();
    static Ty pair(Ty left, Ty right);
    static Ty or_(Ty left, Ty right);
    static Ty option(Ty inner);
    static Ty map(Ty key, Ty value);
    static Ty big_map(Ty key, Ty value);
    static Ty list(Ty inner);
    static Ty contract(Ty param);
    static Ty operation();

    Tag tag = Tag::unit_t;
    std::vector<Ty> args;
    std::vector<std::string> annots;

    /// Structural equality, annotations ignored.
    bool operator==(const Ty& other) const;

    std::string str() const;
};

bool is_comparable(const Ty& ty);
bool is_pushable(const Ty& ty);

class TypeError : public Error {
public:
    explicit TypeError(const std::string& msg) : Error(msg) {}
    TypeError(int line, int col, const std::string& msg);
};

class UnknownType : public TypeError {
public:
    using TypeError::TypeError;
};

class MissingSection : public Error {
public:
    explicit MissingSection(const std::string& section)
        : Error("missing " + section + " section") {}
};

class DuplicateSection : public Error {
public:
    explicit DuplicateSection(const std::string& section)
        : Error("duplicate " + section + " section") {}
};

class UnsupportedInstruction : public Error {
public:
    UnsupportedInstruction(int line, int col, const std::string& name);
};

/// Raised by the interpreter on a tag/stack mismatch that the typechecker is
/// supposed to rule out; reaching it is a bug in this library.
class InternalTypeError : public Error {
public:
    explicit InternalTypeError(const std::string& msg)
        : Error("internal type error: " + msg) {}
};

/// Elaborate a Micheline type expression into a Ty. Enforces comparable map
/// keys. Throws UnknownType.
Ty elaborate_type(const MichelineNode& node);

struct ContractScript {
    Ty parameter_ty;
    Ty storage_ty;
    MichelineNode code;
};

/// Split a parameter/storage/code toplevel into a ContractScript. Sections
/// may come in any order; each must appear exactly once.
ContractScript parse_contract(const MichelineNode& node);
ContractScript parse_contract_text(const std::string& text);

/// Route to one entrypoint of a parameter type: the or-constructor path from
/// the root (false = Left, true = Right) and the entrypoint's argument type.
struct EntrypointPath {
    std::vector<bool> rights;
    Ty ty;
};

/// Find a %name-annotated entrypoint in the parameter tree; an empty name
/// means the root. Returns nothing when the name does not occur.
std::optional<EntrypointPath> find_entrypoint(const Ty& parameter_ty,
                                              const std::string& name);

/// A runtime value. nat/int/mutez share the integer tag, address shares the
/// string tag; the typechecker keeps the interpretation unambiguous. Maps are
/// stored flattened as [k0, v0, k1, v1, ...] sorted by key.
struct Value {
    enum class Tag {
        unit_v,
        bool_v,
        int_v,
        string_v,
        bytes_v,
        pair_v,
        left_v,
        right_v,
        none_v,
        some_v,
        list_v,
        map_v,
        contract_v,
        operation_v,
    };

    static Value unit();
    static Value boolean(bool b);
    static Value integer(BigInt num);
    static Value string(std::string s);
    static Value bytes(std::vector<std::uint8_t> data);
    static Value pair(Value first, Value second);
    static Value left(Value inner);
    static Value right(Value inner);
    static Value none();
    static Value some(Value inner);
    static Value list(std::vector<Value> elems);
    static Value map(std::vector<Value> flat_sorted_entries);
    static Value contract(ContractRef ref);
    static Value operation(EmittedOperation op);

    Tag tag = Tag::unit_v;
    bool b = false;
    BigInt num;
    std::string str;
    std::vector<std::uint8_t> blob;
    std::vector<Value> args;
    ContractRef ref;
    EmittedOperation op;

    bool equals(const Value& other) const;

    const Value& first() const { return args[0]; }
    const Value& second() const { return args[1]; }
    const Value& inner() const { return args[0]; }
    std::size_t map_size() const { return args.size() / 2; }
    const Value& map_key(std::size_t i) const { return args[2 * i]; }
    const Value& map_val(std::size_t i) const { return args[2 * i + 1]; }
};

/// Total order over comparable values (numeric, lexicographic, pairwise);
/// returns -1, 0, or 1. Throws InternalTypeError on non-comparable tags.
int compare_values(const Value& a, const Value& b);

/// Render a value as canonical Micheline data text.
MichelineNode value_to_node(const Value& value);
std::string print_value(const Value& value);

/// Typed handle the interpreter uses to resolve CONTRACT instructions and
/// the harness uses to type-elaborate callback parameters.
class ContractResolver {
public:
    virtual ~ContractResolver() = default;

    /// Parameter type of the given contract entrypoint, if that contract
    /// exists and names it.
    virtual std::optional<Ty> entrypoint_type(
        const Address& address, const std::string& entrypoint) const = 0;
};

/// Elaborate parsed Micheline data into a Value of the given type. Map
/// literals must be sorted by key without duplicates. Contract values are
/// written as address strings, with an optional %entrypoint suffix.
Value elaborate_value(const MichelineNode& node, const Ty& ty);

/// One typecheck-resolved instruction. The interpreter runs these without
/// re-examining value tags.
struct TypedInstr {
    enum class Op {
        dup,
        swap,
        dig,
        dug,
        drop,
        push,
        unit_op,
        car,
        cdr,
        pair_op,
        unpair,
        left_op,
        right_op,
        if_left,
        if_none,
        if_op,
        some_op,
        none_op,
        nil,
        cons,
        empty_map,
        get,
        update,
        mem,
        compare_op,
        eq,
        neq,
        lt,
        gt,
        le,
        ge,
        add,
        sub,
        sub_mutez,
        mul,
        and_op,
        or_op,
        not_op,
        amount,
        sender,
        self_op,
        self_address,
        address_op,
        contract_op,
        transfer_tokens,
        failwith,
        dip,
    };

    /// Numeric flavor resolved statically for the arithmetic/logic family.
    enum class NumKind { nat_nat, with_int, mutez_mutez, mutez_nat, bool_bool };

    Op op = Op::unit_op;
    std::size_t n = 0;
    Value push_value;
    Ty ty;
    std::string entrypoint;  // contract_op annotation
    NumKind num_kind = NumKind::with_int;
    std::vector<std::vector<TypedInstr>> blocks;
    int line = 0;
    int col = 0;
};

struct TypedProgram {
    Ty parameter_ty;
    Ty storage_ty;
    std::vector<TypedInstr> code;
};

/// Check the script against the supported instruction set, resolving every
/// stack type. The code must consume [pair parameter storage] and leave
/// [pair (list operation) storage] or fail on every path.
TypedProgram typecheck(const ContractScript& script);

/// As typecheck, but appends one line per checked instruction: its source
/// form and the stack of types after it, indented by block depth.
TypedProgram typecheck(const ContractScript& script,
                       std::vector<std::string>& trace);

struct InterpretResult {
    enum class Status { success, failed, step_limit };

    static InterpretResult success(std::vector<EmittedOperation> ops,
                                   Value storage);
    static InterpretResult failed(Value fail_value);
    static InterpretResult step_limit_exceeded();

    Status status = Status::success;
    std::vector<EmittedOperation> ops;
    Value storage;
    Value fail_value;
};

inline constexpr std::size_t default_step_limit = 100000;

/// Big-step evaluation of a typed program on one call. Deterministic; the
/// resolver (optional) answers CONTRACT lookups, unknown addresses yield
/// None. Mutez overflow fails the call like FAILWITH with a string marker.
InterpretResult interpret(const TypedProgram& program, const CallEnv& env,
                          const Value& param, const Value& storage,
                          const ContractResolver* resolver = nullptr,
                          std::size_t step_limit = default_step_limit);

}  // namespace fa12
