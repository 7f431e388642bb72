// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/michelson.hpp>

#include <sstream>

namespace fa12 {

namespace {

// Stack of types, top at the back; `failed` marks the bottom of a FAILWITH
// branch, which unifies with any other branch.
struct StackTy {
    bool failed = false;
    std::vector<Ty> items;
};

std::string stack_str(const StackTy& stack) {
    if (stack.failed)
        return "<failed>";
    std::ostringstream out;
    out << "[";
    for (std::size_t i = stack.items.size(); i-- > 0;) {
        out << stack.items[i].str();
        if (i)
            out << " : ";
    }
    out << "]";
    return out.str();
}

// One line per instruction: source form, then the stack of types after it.
std::string trace_line(const MichelineNode& node, const StackTy& stack,
                       int depth) {
    std::ostringstream out;
    for (int i = 1; i < depth; ++i)
        out << "  ";
    out << node.text;
    for (const std::string& annot : node.annots)
        out << " " << annot;
    for (const MichelineNode& arg : node.args)
        if (arg.kind != MichelineNode::Kind::seq)
            out << " " << print_micheline(arg);
    out << "  " << stack_str(stack);
    return out.str();
}

class Checker {
public:
    explicit Checker(const ContractScript& script,
                     std::vector<std::string>* trace)
        : script_(script), trace_(trace) {}

    TypedProgram run() {
        TypedProgram program;
        program.parameter_ty = script_.parameter_ty;
        program.storage_ty = script_.storage_ty;
        StackTy entry;
        entry.items.push_back(
            Ty::pair(script_.parameter_ty, script_.storage_ty));
        StackTy exit = check_block(script_.code, std::move(entry),
                                   program.code);
        if (!exit.failed) {
            const Ty want =
                Ty::pair(Ty::list(Ty::operation()), script_.storage_ty);
            if (exit.items.size() != 1 || !(exit.items[0] == want)) {
                StackTy expected;
                expected.items.push_back(want);
                fail(script_.code,
                     "code must end with " + stack_str(expected) + ", got " +
                         stack_str(exit));
            }
        }
        return program;
    }

private:
    [[noreturn]] void fail(const MichelineNode& node,
                           const std::string& msg) const {
        throw TypeError(node.line, node.col, msg);
    }

    StackTy check_block(const MichelineNode& seq, StackTy stack,
                        std::vector<TypedInstr>& out) {
        ++depth_;
        for (const MichelineNode& node : seq.args) {
            if (stack.failed)
                fail(node, "unreachable code after FAILWITH");
            if (node.kind == MichelineNode::Kind::seq) {
                stack = check_block(node, std::move(stack), out);
                continue;
            }
            if (node.kind != MichelineNode::Kind::prim)
                fail(node, "expected an instruction");
            stack = check_instr(node, std::move(stack), out);
            if (trace_ != nullptr)
                trace_->push_back(trace_line(node, stack, depth_));
        }
        --depth_;
        return stack;
    }

    Ty pop(const MichelineNode& node, StackTy& stack) {
        if (stack.items.empty())
            fail(node, node.text + " on an empty stack");
        Ty top = std::move(stack.items.back());
        stack.items.pop_back();
        return top;
    }

    const Ty& peek(const MichelineNode& node, const StackTy& stack,
                   std::size_t depth = 0) const {
        if (stack.items.size() <= depth)
            fail(node, node.text + " needs a stack of depth " +
                           std::to_string(depth + 1) + ", got " +
                           stack_str(stack));
        return stack.items[stack.items.size() - 1 - depth];
    }

    void expect(const MichelineNode& node, const Ty& got, const Ty& want) {
        if (!(got == want))
            fail(node, node.text + " expected " + want.str() + ", got " +
                           got.str());
    }

    std::size_t nat_arg(const MichelineNode& node, std::size_t index) {
        const MichelineNode& arg = node.args[index];
        if (arg.kind != MichelineNode::Kind::int_lit || arg.int_value < 0 ||
            arg.int_value > 1000000)
            fail(node, node.text + " expects a small numeral argument");
        return static_cast<std::size_t>(arg.int_value);
    }

    void need_args(const MichelineNode& node, std::size_t n) {
        if (node.args.size() != n)
            fail(node, node.text + " expects " + std::to_string(n) +
                           " argument" + (n == 1 ? "" : "s") + ", got " +
                           std::to_string(node.args.size()));
    }

    const MichelineNode& block_arg(const MichelineNode& node,
                                   std::size_t index) {
        const MichelineNode& arg = node.args[index];
        if (arg.kind != MichelineNode::Kind::seq)
            fail(node, node.text + " expects a { } block argument");
        return arg;
    }

    StackTy unify(const MichelineNode& node, StackTy a, StackTy b) {
        if (a.failed)
            return b;
        if (b.failed)
            return a;
        bool same = a.items.size() == b.items.size();
        for (std::size_t i = 0; same && i < a.items.size(); ++i)
            same = a.items[i] == b.items[i];
        if (!same)
            fail(node, node.text + " branches end with different stacks: " +
                           stack_str(a) + " vs " + stack_str(b));
        return a;
    }

    std::string entrypoint_annot(const MichelineNode& node) {
        for (const std::string& a : node.annots)
            if (a.size() > 1 && a[0] == '%')
                return a.substr(1);
        return "";
    }

    TypedInstr base(TypedInstr::Op op, const MichelineNode& node) {
        TypedInstr instr;
        instr.op = op;
        instr.line = node.line;
        instr.col = node.col;
        return instr;
    }

    StackTy check_instr(const MichelineNode& node, StackTy stack,
                        std::vector<TypedInstr>& out);

    const ContractScript& script_;
    std::vector<std::string>* trace_;
    int depth_ = 0;
};

StackTy Checker::check_instr(const MichelineNode& node, StackTy stack,
                             std::vector<TypedInstr>& out) {
    const std::string& name = node.text;

    if (name == "DUP") {
        std::size_t n = 1;
        if (!node.args.empty()) {
            need_args(node, 1);
            n = nat_arg(node, 0);
        }
        if (n == 0)
            fail(node, "DUP 0 is not a valid instruction");
        TypedInstr instr = base(TypedInstr::Op::dup, node);
        instr.n = n;
        stack.items.push_back(peek(node, stack, n - 1));
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "SWAP") {
        need_args(node, 0);
        peek(node, stack, 1);
        std::swap(stack.items[stack.items.size() - 1],
                  stack.items[stack.items.size() - 2]);
        out.push_back(base(TypedInstr::Op::swap, node));
        return stack;
    }
    if (name == "DIG" || name == "DUG") {
        need_args(node, 1);
        const std::size_t n = nat_arg(node, 0);
        peek(node, stack, n);
        const std::size_t size = stack.items.size();
        if (name == "DIG") {
            Ty lifted = std::move(stack.items[size - 1 - n]);
            stack.items.erase(stack.items.begin() +
                              static_cast<std::ptrdiff_t>(size - 1 - n));
            stack.items.push_back(std::move(lifted));
        } else {
            Ty buried = std::move(stack.items.back());
            stack.items.pop_back();
            stack.items.insert(stack.items.begin() +
                                   static_cast<std::ptrdiff_t>(size - 1 - n),
                               std::move(buried));
        }
        TypedInstr instr = base(name == "DIG" ? TypedInstr::Op::dig
                                              : TypedInstr::Op::dug,
                                node);
        instr.n = n;
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "DROP") {
        std::size_t n = 1;
        if (!node.args.empty()) {
            need_args(node, 1);
            n = nat_arg(node, 0);
        }
        if (n > 0)
            peek(node, stack, n - 1);
        stack.items.resize(stack.items.size() - n);
        TypedInstr instr = base(TypedInstr::Op::drop, node);
        instr.n = n;
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "PUSH") {
        need_args(node, 2);
        Ty ty = elaborate_type(node.args[0]);
        if (!is_pushable(ty))
            fail(node, "PUSH of non-pushable type " + ty.str());
        TypedInstr instr = base(TypedInstr::Op::push, node);
        instr.push_value = elaborate_value(node.args[1], ty);
        instr.ty = ty;
        stack.items.push_back(std::move(ty));
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "UNIT") {
        need_args(node, 0);
        stack.items.push_back(Ty::unit());
        out.push_back(base(TypedInstr::Op::unit_op, node));
        return stack;
    }
    if (name == "CAR" || name == "CDR") {
        need_args(node, 0);
        Ty top = pop(node, stack);
        if (top.tag != Ty::Tag::pair_t)
            fail(node, name + " expected a pair, got " + top.str());
        stack.items.push_back(top.args[name == "CAR" ? 0 : 1]);
        out.push_back(base(name == "CAR" ? TypedInstr::Op::car
                                         : TypedInstr::Op::cdr,
                           node));
        return stack;
    }
    if (name == "PAIR") {
        need_args(node, 0);
        Ty first = pop(node, stack);
        Ty second = pop(node, stack);
        stack.items.push_back(Ty::pair(std::move(first), std::move(second)));
        out.push_back(base(TypedInstr::Op::pair_op, node));
        return stack;
    }
    if (name == "UNPAIR") {
        need_args(node, 0);
        Ty top = pop(node, stack);
        if (top.tag != Ty::Tag::pair_t)
            fail(node, "UNPAIR expected a pair, got " + top.str());
        stack.items.push_back(top.args[1]);
        stack.items.push_back(top.args[0]);
        out.push_back(base(TypedInstr::Op::unpair, node));
        return stack;
    }
    if (name == "LEFT" || name == "RIGHT") {
        need_args(node, 1);
        Ty other = elaborate_type(node.args[0]);
        Ty top = pop(node, stack);
        TypedInstr instr = base(name == "LEFT" ? TypedInstr::Op::left_op
                                               : TypedInstr::Op::right_op,
                                node);
        instr.ty = other;
        stack.items.push_back(name == "LEFT"
                                  ? Ty::or_(std::move(top), std::move(other))
                                  : Ty::or_(std::move(other), std::move(top)));
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "IF_LEFT" || name == "IF_NONE" || name == "IF") {
        need_args(node, 2);
        Ty top = pop(node, stack);
        StackTy first_stack = stack;
        StackTy second_stack = std::move(stack);
        TypedInstr::Op op;
        if (name == "IF_LEFT") {
            if (top.tag != Ty::Tag::or_t)
                fail(node, "IF_LEFT expected an or, got " + top.str());
            first_stack.items.push_back(top.args[0]);
            second_stack.items.push_back(top.args[1]);
            op = TypedInstr::Op::if_left;
        } else if (name == "IF_NONE") {
            if (top.tag != Ty::Tag::option_t)
                fail(node, "IF_NONE expected an option, got " + top.str());
            second_stack.items.push_back(top.args[0]);
            op = TypedInstr::Op::if_none;
        } else {
            expect(node, top, Ty::bool_());
            op = TypedInstr::Op::if_op;
        }
        TypedInstr instr = base(op, node);
        instr.blocks.resize(2);
        StackTy first_out = check_block(block_arg(node, 0),
                                        std::move(first_stack),
                                        instr.blocks[0]);
        StackTy second_out = check_block(block_arg(node, 1),
                                         std::move(second_stack),
                                         instr.blocks[1]);
        out.push_back(std::move(instr));
        return unify(node, std::move(first_out), std::move(second_out));
    }
    if (name == "SOME") {
        need_args(node, 0);
        Ty top = pop(node, stack);
        stack.items.push_back(Ty::option(std::move(top)));
        out.push_back(base(TypedInstr::Op::some_op, node));
        return stack;
    }
    if (name == "NONE" || name == "NIL") {
        need_args(node, 1);
        Ty ty = elaborate_type(node.args[0]);
        TypedInstr instr = base(name == "NONE" ? TypedInstr::Op::none_op
                                               : TypedInstr::Op::nil,
                                node);
        instr.ty = ty;
        stack.items.push_back(name == "NONE" ? Ty::option(std::move(ty))
                                             : Ty::list(std::move(ty)));
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "CONS") {
        need_args(node, 0);
        Ty head = pop(node, stack);
        const Ty& rest = peek(node, stack);
        if (rest.tag != Ty::Tag::list_t)
            fail(node, "CONS expected a list, got " + rest.str());
        expect(node, head, rest.args[0]);
        out.push_back(base(TypedInstr::Op::cons, node));
        return stack;
    }
    if (name == "EMPTY_MAP" || name == "EMPTY_BIG_MAP") {
        need_args(node, 2);
        Ty key = elaborate_type(node.args[0]);
        Ty value = elaborate_type(node.args[1]);
        if (!is_comparable(key))
            fail(node, "map key type " + key.str() + " is not comparable");
        TypedInstr instr = base(TypedInstr::Op::empty_map, node);
        instr.ty = name == "EMPTY_MAP"
                       ? Ty::map(std::move(key), std::move(value))
                       : Ty::big_map(std::move(key), std::move(value));
        stack.items.push_back(instr.ty);
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "GET" || name == "MEM") {
        need_args(node, 0);
        Ty key = pop(node, stack);
        Ty coll = pop(node, stack);
        if (coll.tag != Ty::Tag::map_t && coll.tag != Ty::Tag::big_map_t)
            fail(node, name + " expected a map, got " + coll.str());
        expect(node, key, coll.args[0]);
        stack.items.push_back(name == "GET" ? Ty::option(coll.args[1])
                                            : Ty::bool_());
        out.push_back(base(name == "GET" ? TypedInstr::Op::get
                                         : TypedInstr::Op::mem,
                           node));
        return stack;
    }
    if (name == "UPDATE") {
        need_args(node, 0);
        Ty key = pop(node, stack);
        Ty opt = pop(node, stack);
        const Ty& coll = peek(node, stack);
        if (coll.tag != Ty::Tag::map_t && coll.tag != Ty::Tag::big_map_t)
            fail(node, "UPDATE expected a map, got " + coll.str());
        expect(node, key, coll.args[0]);
        if (opt.tag != Ty::Tag::option_t || !(opt.args[0] == coll.args[1]))
            fail(node, "UPDATE expected option " + coll.args[1].str() +
                           ", got " + opt.str());
        out.push_back(base(TypedInstr::Op::update, node));
        return stack;
    }
    if (name == "COMPARE") {
        need_args(node, 0);
        Ty a = pop(node, stack);
        Ty b = pop(node, stack);
        if (!(a == b) || !is_comparable(a))
            fail(node, "COMPARE expected two equal comparable types, got " +
                           a.str() + " and " + b.str());
        stack.items.push_back(Ty::int_());
        out.push_back(base(TypedInstr::Op::compare_op, node));
        return stack;
    }
    if (name == "EQ" || name == "NEQ" || name == "LT" || name == "GT" ||
        name == "LE" || name == "GE") {
        need_args(node, 0);
        Ty top = pop(node, stack);
        expect(node, top, Ty::int_());
        stack.items.push_back(Ty::bool_());
        TypedInstr::Op op = TypedInstr::Op::eq;
        if (name == "NEQ") op = TypedInstr::Op::neq;
        if (name == "LT") op = TypedInstr::Op::lt;
        if (name == "GT") op = TypedInstr::Op::gt;
        if (name == "LE") op = TypedInstr::Op::le;
        if (name == "GE") op = TypedInstr::Op::ge;
        out.push_back(base(op, node));
        return stack;
    }
    if (name == "ADD" || name == "SUB" || name == "MUL" ||
        name == "SUB_MUTEZ") {
        need_args(node, 0);
        Ty a = pop(node, stack);
        Ty b = pop(node, stack);
        const bool a_nat = a.tag == Ty::Tag::nat_t;
        const bool b_nat = b.tag == Ty::Tag::nat_t;
        const bool a_num = a_nat || a.tag == Ty::Tag::int_t;
        const bool b_num = b_nat || b.tag == Ty::Tag::int_t;
        const bool a_mutez = a.tag == Ty::Tag::mutez_t;
        const bool b_mutez = b.tag == Ty::Tag::mutez_t;
        TypedInstr instr = base(TypedInstr::Op::add, node);
        Ty result;
        if (name == "SUB_MUTEZ") {
            if (!a_mutez || !b_mutez)
                fail(node, "SUB_MUTEZ expected two mutez, got " + a.str() +
                               " and " + b.str());
            instr.op = TypedInstr::Op::sub_mutez;
            instr.num_kind = TypedInstr::NumKind::mutez_mutez;
            result = Ty::option(Ty::mutez());
        } else if (name == "SUB") {
            if (!a_num || !b_num)
                fail(node, "SUB expected numbers, got " + a.str() + " and " +
                               b.str());
            instr.op = TypedInstr::Op::sub;
            instr.num_kind = TypedInstr::NumKind::with_int;
            result = Ty::int_();
        } else {
            instr.op = name == "ADD" ? TypedInstr::Op::add
                                     : TypedInstr::Op::mul;
            if (a_nat && b_nat) {
                instr.num_kind = TypedInstr::NumKind::nat_nat;
                result = Ty::nat();
            } else if (a_num && b_num) {
                instr.num_kind = TypedInstr::NumKind::with_int;
                result = Ty::int_();
            } else if (name == "ADD" && a_mutez && b_mutez) {
                instr.num_kind = TypedInstr::NumKind::mutez_mutez;
                result = Ty::mutez();
            } else if (name == "MUL" &&
                       ((a_mutez && b_nat) || (a_nat && b_mutez))) {
                instr.num_kind = TypedInstr::NumKind::mutez_nat;
                result = Ty::mutez();
            } else {
                fail(node, name + " is not defined on " + a.str() + " and " +
                               b.str());
            }
        }
        stack.items.push_back(std::move(result));
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "AND" || name == "OR") {
        need_args(node, 0);
        Ty a = pop(node, stack);
        Ty b = pop(node, stack);
        TypedInstr instr = base(name == "AND" ? TypedInstr::Op::and_op
                                              : TypedInstr::Op::or_op,
                                node);
        if (a.tag == Ty::Tag::bool_t && b.tag == Ty::Tag::bool_t) {
            instr.num_kind = TypedInstr::NumKind::bool_bool;
            stack.items.push_back(Ty::bool_());
        } else if (a.tag == Ty::Tag::nat_t && b.tag == Ty::Tag::nat_t) {
            instr.num_kind = TypedInstr::NumKind::nat_nat;
            stack.items.push_back(Ty::nat());
        } else {
            fail(node, name + " is not defined on " + a.str() + " and " +
                           b.str());
        }
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "NOT") {
        need_args(node, 0);
        Ty top = pop(node, stack);
        TypedInstr instr = base(TypedInstr::Op::not_op, node);
        if (top.tag == Ty::Tag::bool_t) {
            instr.num_kind = TypedInstr::NumKind::bool_bool;
            stack.items.push_back(Ty::bool_());
        } else if (top.tag == Ty::Tag::nat_t || top.tag == Ty::Tag::int_t) {
            instr.num_kind = TypedInstr::NumKind::with_int;
            stack.items.push_back(Ty::int_());
        } else {
            fail(node, "NOT is not defined on " + top.str());
        }
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "AMOUNT" || name == "SENDER" || name == "SELF_ADDRESS") {
        need_args(node, 0);
        stack.items.push_back(name == "AMOUNT" ? Ty::mutez() : Ty::address());
        TypedInstr::Op op = TypedInstr::Op::amount;
        if (name == "SENDER") op = TypedInstr::Op::sender;
        if (name == "SELF_ADDRESS") op = TypedInstr::Op::self_address;
        out.push_back(base(op, node));
        return stack;
    }
    if (name == "SELF") {
        need_args(node, 0);
        TypedInstr instr = base(TypedInstr::Op::self_op, node);
        instr.entrypoint = entrypoint_annot(node);
        const auto ep = find_entrypoint(script_.parameter_ty,
                                        instr.entrypoint);
        if (!ep)
            fail(node, "SELF names unknown entrypoint %" + instr.entrypoint);
        stack.items.push_back(Ty::contract(ep->ty));
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "ADDRESS") {
        need_args(node, 0);
        Ty top = pop(node, stack);
        if (top.tag != Ty::Tag::contract_t)
            fail(node, "ADDRESS expected a contract, got " + top.str());
        stack.items.push_back(Ty::address());
        out.push_back(base(TypedInstr::Op::address_op, node));
        return stack;
    }
    if (name == "CONTRACT") {
        need_args(node, 1);
        Ty top = pop(node, stack);
        expect(node, top, Ty::address());
        TypedInstr instr = base(TypedInstr::Op::contract_op, node);
        instr.ty = elaborate_type(node.args[0]);
        instr.entrypoint = entrypoint_annot(node);
        stack.items.push_back(Ty::option(Ty::contract(instr.ty)));
        out.push_back(std::move(instr));
        return stack;
    }
    if (name == "TRANSFER_TOKENS") {
        need_args(node, 0);
        Ty param = pop(node, stack);
        Ty amount = pop(node, stack);
        Ty dest = pop(node, stack);
        expect(node, amount, Ty::mutez());
        if (dest.tag != Ty::Tag::contract_t)
            fail(node, "TRANSFER_TOKENS expected a contract, got " +
                           dest.str());
        expect(node, param, dest.args[0]);
        stack.items.push_back(Ty::operation());
        out.push_back(base(TypedInstr::Op::transfer_tokens, node));
        return stack;
    }
    if (name == "FAILWITH") {
        need_args(node, 0);
        pop(node, stack);
        out.push_back(base(TypedInstr::Op::failwith, node));
        StackTy failed;
        failed.failed = true;
        return failed;
    }
    if (name == "DIP") {
        std::size_t n = 1;
        std::size_t block_index = 0;
        if (node.args.size() == 2) {
            n = nat_arg(node, 0);
            block_index = 1;
        } else {
            need_args(node, 1);
        }
        if (n > 0)
            peek(node, stack, n - 1);
        std::vector<Ty> protected_items(stack.items.end() -
                                            static_cast<std::ptrdiff_t>(n),
                                        stack.items.end());
        stack.items.resize(stack.items.size() - n);
        TypedInstr instr = base(TypedInstr::Op::dip, node);
        instr.n = n;
        instr.blocks.resize(1);
        StackTy inner = check_block(block_arg(node, block_index),
                                    std::move(stack), instr.blocks[0]);
        if (inner.failed)
            fail(node, "DIP body may not end in FAILWITH");
        inner.items.insert(inner.items.end(),
                           std::make_move_iterator(protected_items.begin()),
                           std::make_move_iterator(protected_items.end()));
        out.push_back(std::move(instr));
        return inner;
    }

    throw UnsupportedInstruction(node.line, node.col, name);
}

}  // namespace

TypedProgram typecheck(const ContractScript& script) {
    return Checker(script, nullptr).run();
}

TypedProgram typecheck(const ContractScript& script,
                       std::vector<std::string>& trace) {
    return Checker(script, &trace).run();
}

}  // namespace fa12
