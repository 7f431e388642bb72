// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/michelson.hpp>

#include <algorithm>

namespace fa12 {

InterpretResult InterpretResult::success(std::vector<EmittedOperation> ops,
                                         Value storage) {
    InterpretResult r;
    r.status = Status::success;
    r.ops = std::move(ops);
    r.storage = std::move(storage);
    return r;
}

InterpretResult InterpretResult::failed(Value fail_value) {
    InterpretResult r;
    r.status = Status::failed;
    r.fail_value = std::move(fail_value);
    return r;
}

InterpretResult InterpretResult::step_limit_exceeded() {
    InterpretResult r;
    r.status = Status::step_limit;
    return r;
}

namespace {

struct FailSignal {
    Value value;
};

struct StepLimitSignal {};

using Stack = std::vector<Value>;  // top at the back

class Machine {
public:
    Machine(const CallEnv& env, const ContractResolver* resolver,
            std::size_t step_limit)
        : env_(env), resolver_(resolver), steps_left_(step_limit) {}

    void run(const std::vector<TypedInstr>& block, Stack& stack) {
        for (const TypedInstr& instr : block)
            step(instr, stack);
    }

private:
    static Value pop(Stack& stack) {
        if (stack.empty())
            throw InternalTypeError("value stack underflow");
        Value v = std::move(stack.back());
        stack.pop_back();
        return v;
    }

    static BigInt pop_num(Stack& stack) {
        Value v = pop(stack);
        if (v.tag != Value::Tag::int_v)
            throw InternalTypeError("expected a number on the stack");
        return std::move(v.num);
    }

    static bool pop_bool(Stack& stack) {
        Value v = pop(stack);
        if (v.tag != Value::Tag::bool_v)
            throw InternalTypeError("expected a bool on the stack");
        return v.b;
    }

    static Value pop_pair(Stack& stack) {
        Value v = pop(stack);
        if (v.tag != Value::Tag::pair_v)
            throw InternalTypeError("expected a pair on the stack");
        return v;
    }

    // Index of the first entry with key >= key, in a flattened map.
    static std::size_t map_lower_bound(const Value& map, const Value& key) {
        std::size_t lo = 0;
        std::size_t hi = map.map_size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (compare_values(map.map_key(mid), key) < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    void step(const TypedInstr& instr, Stack& stack) {
        if (steps_left_ == 0)
            throw StepLimitSignal{};
        --steps_left_;

        using Op = TypedInstr::Op;
        switch (instr.op) {
        case Op::dup:
            stack.push_back(stack[stack.size() - instr.n]);
            return;
        case Op::swap:
            std::swap(stack[stack.size() - 1], stack[stack.size() - 2]);
            return;
        case Op::dig: {
            const auto it =
                stack.end() - static_cast<std::ptrdiff_t>(instr.n) - 1;
            std::rotate(it, it + 1, stack.end());
            return;
        }
        case Op::dug: {
            const auto it =
                stack.end() - static_cast<std::ptrdiff_t>(instr.n) - 1;
            std::rotate(it, stack.end() - 1, stack.end());
            return;
        }
        case Op::drop:
            stack.resize(stack.size() - instr.n);
            return;
        case Op::push:
            stack.push_back(instr.push_value);
            return;
        case Op::unit_op:
            stack.push_back(Value::unit());
            return;
        case Op::car: {
            Value top = pop_pair(stack);
            stack.push_back(std::move(top.args[0]));
            return;
        }
        case Op::cdr: {
            Value top = pop_pair(stack);
            stack.push_back(std::move(top.args[1]));
            return;
        }
        case Op::pair_op: {
            Value first = pop(stack);
            Value second = pop(stack);
            stack.push_back(Value::pair(std::move(first), std::move(second)));
            return;
        }
        case Op::unpair: {
            Value top = pop_pair(stack);
            stack.push_back(std::move(top.args[1]));
            stack.push_back(std::move(top.args[0]));
            return;
        }
        case Op::left_op: {
            Value top = pop(stack);
            stack.push_back(Value::left(std::move(top)));
            return;
        }
        case Op::right_op: {
            Value top = pop(stack);
            stack.push_back(Value::right(std::move(top)));
            return;
        }
        case Op::if_left: {
            Value top = pop(stack);
            if (top.tag != Value::Tag::left_v &&
                top.tag != Value::Tag::right_v)
                throw InternalTypeError("IF_LEFT on a non-or value");
            const bool is_left = top.tag == Value::Tag::left_v;
            stack.push_back(std::move(top.args[0]));
            run(instr.blocks[is_left ? 0 : 1], stack);
            return;
        }
        case Op::if_none: {
            Value top = pop(stack);
            if (top.tag == Value::Tag::none_v) {
                run(instr.blocks[0], stack);
            } else if (top.tag == Value::Tag::some_v) {
                stack.push_back(std::move(top.args[0]));
                run(instr.blocks[1], stack);
            } else {
                throw InternalTypeError("IF_NONE on a non-option value");
            }
            return;
        }
        case Op::if_op:
            run(instr.blocks[pop_bool(stack) ? 0 : 1], stack);
            return;
        case Op::some_op: {
            Value top = pop(stack);
            stack.push_back(Value::some(std::move(top)));
            return;
        }
        case Op::none_op:
            stack.push_back(Value::none());
            return;
        case Op::nil:
            stack.push_back(Value::list({}));
            return;
        case Op::cons: {
            Value head = pop(stack);
            Value rest = pop(stack);
            std::vector<Value> elems;
            elems.reserve(rest.args.size() + 1);
            elems.push_back(std::move(head));
            for (Value& e : rest.args)
                elems.push_back(std::move(e));
            stack.push_back(Value::list(std::move(elems)));
            return;
        }
        case Op::empty_map:
            stack.push_back(Value::map({}));
            return;
        case Op::get: {
            Value key = pop(stack);
            Value map = pop(stack);
            const std::size_t i = map_lower_bound(map, key);
            if (i < map.map_size() &&
                compare_values(map.map_key(i), key) == 0)
                stack.push_back(Value::some(std::move(map.args[2 * i + 1])));
            else
                stack.push_back(Value::none());
            return;
        }
        case Op::update: {
            Value key = pop(stack);
            Value opt = pop(stack);
            Value map = pop(stack);
            const std::size_t i = map_lower_bound(map, key);
            const bool present = i < map.map_size() &&
                                 compare_values(map.map_key(i), key) == 0;
            const auto at =
                map.args.begin() + static_cast<std::ptrdiff_t>(2 * i);
            if (opt.tag == Value::Tag::some_v) {
                if (present) {
                    map.args[2 * i + 1] = std::move(opt.args[0]);
                } else {
                    Value entry[2] = {std::move(key), std::move(opt.args[0])};
                    map.args.insert(at, std::make_move_iterator(entry),
                                    std::make_move_iterator(entry + 2));
                }
            } else if (present) {
                map.args.erase(at, at + 2);
            }
            stack.push_back(std::move(map));
            return;
        }
        case Op::mem: {
            Value key = pop(stack);
            Value map = pop(stack);
            const std::size_t i = map_lower_bound(map, key);
            stack.push_back(Value::boolean(
                i < map.map_size() &&
                compare_values(map.map_key(i), key) == 0));
            return;
        }
        case Op::compare_op: {
            Value a = pop(stack);
            Value b = pop(stack);
            stack.push_back(Value::integer(compare_values(a, b)));
            return;
        }
        case Op::eq:
            stack.push_back(Value::boolean(pop_num(stack) == 0));
            return;
        case Op::neq:
            stack.push_back(Value::boolean(pop_num(stack) != 0));
            return;
        case Op::lt:
            stack.push_back(Value::boolean(pop_num(stack) < 0));
            return;
        case Op::gt:
            stack.push_back(Value::boolean(pop_num(stack) > 0));
            return;
        case Op::le:
            stack.push_back(Value::boolean(pop_num(stack) <= 0));
            return;
        case Op::ge:
            stack.push_back(Value::boolean(pop_num(stack) >= 0));
            return;
        case Op::add:
        case Op::sub:
        case Op::mul: {
            const BigInt a = pop_num(stack);
            const BigInt b = pop_num(stack);
            BigInt result;
            if (instr.op == Op::add)
                result = a + b;
            else if (instr.op == Op::sub)
                result = a - b;
            else
                result = a * b;
            const bool mutez_result =
                instr.num_kind == TypedInstr::NumKind::mutez_mutez ||
                instr.num_kind == TypedInstr::NumKind::mutez_nat;
            if (mutez_result && result > Mutez::max_value)
                throw FailSignal{Value::string("mutez overflow")};
            stack.push_back(Value::integer(std::move(result)));
            return;
        }
        case Op::sub_mutez: {
            const BigInt a = pop_num(stack);
            const BigInt b = pop_num(stack);
            if (a < b)
                stack.push_back(Value::none());
            else
                stack.push_back(Value::some(Value::integer(a - b)));
            return;
        }
        case Op::and_op:
        case Op::or_op: {
            if (instr.num_kind == TypedInstr::NumKind::bool_bool) {
                const bool a = pop_bool(stack);
                const bool b = pop_bool(stack);
                stack.push_back(
                    Value::boolean(instr.op == Op::and_op ? (a && b)
                                                          : (a || b)));
            } else {
                const BigInt a = pop_num(stack);
                const BigInt b = pop_num(stack);
                BigInt result;
                if (instr.op == Op::and_op)
                    result = a & b;
                else
                    result = a | b;
                stack.push_back(Value::integer(std::move(result)));
            }
            return;
        }
        case Op::not_op:
            if (instr.num_kind == TypedInstr::NumKind::bool_bool) {
                stack.push_back(Value::boolean(!pop_bool(stack)));
            } else {
                stack.push_back(Value::integer(-pop_num(stack) - 1));
            }
            return;
        case Op::amount:
            stack.push_back(Value::integer(env_.amount.value()));
            return;
        case Op::sender:
            stack.push_back(Value::string(env_.sender.id()));
            return;
        case Op::self_op:
            stack.push_back(
                Value::contract(ContractRef{env_.self, instr.entrypoint}));
            return;
        case Op::self_address:
            stack.push_back(Value::string(env_.self.id()));
            return;
        case Op::address_op: {
            Value top = pop(stack);
            if (top.tag != Value::Tag::contract_v)
                throw InternalTypeError("ADDRESS on a non-contract value");
            stack.push_back(Value::string(top.ref.address.id()));
            return;
        }
        case Op::contract_op: {
            Value top = pop(stack);
            if (top.tag != Value::Tag::string_v)
                throw InternalTypeError("CONTRACT on a non-address value");
            stack.push_back(resolve_contract(top.str, instr));
            return;
        }
        case Op::transfer_tokens: {
            Value param = pop(stack);
            const BigInt amount = pop_num(stack);
            Value dest = pop(stack);
            if (dest.tag != Value::Tag::contract_v)
                throw InternalTypeError(
                    "TRANSFER_TOKENS on a non-contract value");
            EmittedOperation op;
            op.destination = dest.ref;
            op.amount = Mutez(static_cast<std::int64_t>(amount));
            op.value = print_value(param);
            stack.push_back(Value::operation(std::move(op)));
            return;
        }
        case Op::failwith:
            throw FailSignal{pop(stack)};
        case Op::dip: {
            Stack saved(std::make_move_iterator(
                            stack.end() -
                            static_cast<std::ptrdiff_t>(instr.n)),
                        std::make_move_iterator(stack.end()));
            stack.resize(stack.size() - instr.n);
            run(instr.blocks[0], stack);
            for (Value& v : saved)
                stack.push_back(std::move(v));
            return;
        }
        }
        throw InternalTypeError("unhandled instruction");
    }

    Value resolve_contract(const std::string& address_text,
                           const TypedInstr& instr) const {
        // An address literal may carry its own %entrypoint suffix; an
        // entrypoint both there and on the instruction does not resolve.
        std::string addr = address_text;
        std::string entrypoint = instr.entrypoint;
        const std::size_t sep = address_text.find('%');
        if (sep != std::string::npos) {
            if (!entrypoint.empty())
                return Value::none();
            addr = address_text.substr(0, sep);
            entrypoint = address_text.substr(sep + 1);
        }
        if (resolver_ == nullptr)
            return Value::none();
        try {
            const auto ty =
                resolver_->entrypoint_type(Address(addr), entrypoint);
            if (!ty || !(*ty == instr.ty))
                return Value::none();
            return Value::some(
                Value::contract(ContractRef{Address(addr), entrypoint}));
        } catch (const Error&) {
            return Value::none();
        }
    }

    const CallEnv& env_;
    const ContractResolver* resolver_;
    std::size_t steps_left_;
};

}  // namespace

InterpretResult interpret(const TypedProgram& program, const CallEnv& env,
                          const Value& param, const Value& storage,
                          const ContractResolver* resolver,
                          std::size_t step_limit) {
    Stack stack;
    stack.push_back(Value::pair(param, storage));
    Machine machine(env, resolver, step_limit);
    try {
        machine.run(program.code, stack);
    } catch (const FailSignal& fail) {
        return InterpretResult::failed(fail.value);
    } catch (const StepLimitSignal&) {
        return InterpretResult::step_limit_exceeded();
    }
    if (stack.size() != 1 || stack.back().tag != Value::Tag::pair_v)
        throw InternalTypeError("program left a malformed stack");
    Value result = std::move(stack.back());
    Value& ops_list = result.args[0];
    if (ops_list.tag != Value::Tag::list_v)
        throw InternalTypeError("program result is not an operation list");
    std::vector<EmittedOperation> ops;
    ops.reserve(ops_list.args.size());
    for (Value& op : ops_list.args) {
        if (op.tag != Value::Tag::operation_v)
            throw InternalTypeError("operation list holds a non-operation");
        ops.push_back(std::move(op.op));
    }
    return InterpretResult::success(std::move(ops),
                                    std::move(result.args[1]));
}

}  // namespace fa12
