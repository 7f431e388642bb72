// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/michelson.hpp>

namespace fa12 {

namespace {

Value make(Value::Tag tag) {
    Value v;
    v.tag = tag;
    return v;
}

}  // namespace

Value Value::unit() { return make(Tag::unit_v); }

Value Value::boolean(bool b) {
    Value v = make(Tag::bool_v);
    v.b = b;
    return v;
}

Value Value::integer(BigInt num) {
    Value v = make(Tag::int_v);
    v.num = std::move(num);
    return v;
}

Value Value::string(std::string s) {
    Value v = make(Tag::string_v);
    v.str = std::move(s);
    return v;
}

Value Value::bytes(std::vector<std::uint8_t> data) {
    Value v = make(Tag::bytes_v);
    v.blob = std::move(data);
    return v;
}

Value Value::pair(Value first, Value second) {
    Value v = make(Tag::pair_v);
    v.args.push_back(std::move(first));
    v.args.push_back(std::move(second));
    return v;
}

Value Value::left(Value inner) {
    Value v = make(Tag::left_v);
    v.args.push_back(std::move(inner));
    return v;
}

Value Value::right(Value inner) {
    Value v = make(Tag::right_v);
    v.args.push_back(std::move(inner));
    return v;
}

Value Value::none() { return make(Tag::none_v); }

Value Value::some(Value inner) {
    Value v = make(Tag::some_v);
    v.args.push_back(std::move(inner));
    return v;
}

Value Value::list(std::vector<Value> elems) {
    Value v = make(Tag::list_v);
    v.args = std::move(elems);
    return v;
}

Value Value::map(std::vector<Value> flat_sorted_entries) {
    Value v = make(Tag::map_v);
    v.args = std::move(flat_sorted_entries);
    return v;
}

Value Value::contract(ContractRef ref) {
    Value v = make(Tag::contract_v);
    v.ref = std::move(ref);
    return v;
}

Value Value::operation(EmittedOperation op) {
    Value v = make(Tag::operation_v);
    v.op = std::move(op);
    return v;
}

bool Value::equals(const Value& other) const {
    if (tag != other.tag)
        return false;
    switch (tag) {
    case Tag::unit_v:
    case Tag::none_v:
        return true;
    case Tag::bool_v:
        return b == other.b;
    case Tag::int_v:
        return num == other.num;
    case Tag::string_v:
        return str == other.str;
    case Tag::bytes_v:
        return blob == other.blob;
    case Tag::contract_v:
        return ref == other.ref;
    case Tag::operation_v:
        return op == other.op;
    case Tag::pair_v:
    case Tag::left_v:
    case Tag::right_v:
    case Tag::some_v:
    case Tag::list_v:
    case Tag::map_v:
        if (args.size() != other.args.size())
            return false;
        for (std::size_t i = 0; i < args.size(); ++i)
            if (!args[i].equals(other.args[i]))
                return false;
        return true;
    }
    return false;
}

int compare_values(const Value& a, const Value& b) {
    if (a.tag != b.tag)
        throw InternalTypeError("comparing values of different shapes");
    switch (a.tag) {
    case Value::Tag::unit_v:
        return 0;
    case Value::Tag::bool_v:
        return a.b == b.b ? 0 : (a.b ? 1 : -1);
    case Value::Tag::int_v:
        return a.num == b.num ? 0 : (a.num < b.num ? -1 : 1);
    case Value::Tag::string_v:
        return a.str == b.str ? 0 : (a.str < b.str ? -1 : 1);
    case Value::Tag::bytes_v:
        return a.blob == b.blob ? 0 : (a.blob < b.blob ? -1 : 1);
    case Value::Tag::pair_v: {
        const int first = compare_values(a.first(), b.first());
        return first != 0 ? first : compare_values(a.second(), b.second());
    }
    default:
        throw InternalTypeError("value shape is not comparable");
    }
}

MichelineNode value_to_node(const Value& value) {
    switch (value.tag) {
    case Value::Tag::unit_v:
        return MichelineNode::prim("Unit");
    case Value::Tag::bool_v:
        return MichelineNode::prim(value.b ? "True" : "False");
    case Value::Tag::int_v:
        return MichelineNode::integer(value.num);
    case Value::Tag::string_v:
        return MichelineNode::string(value.str);
    case Value::Tag::bytes_v:
        return MichelineNode::bytes(value.blob);
    case Value::Tag::pair_v:
        return MichelineNode::prim(
            "Pair", {value_to_node(value.first()), value_to_node(value.second())});
    case Value::Tag::left_v:
        return MichelineNode::prim("Left", {value_to_node(value.inner())});
    case Value::Tag::right_v:
        return MichelineNode::prim("Right", {value_to_node(value.inner())});
    case Value::Tag::none_v:
        return MichelineNode::prim("None");
    case Value::Tag::some_v:
        return MichelineNode::prim("Some", {value_to_node(value.inner())});
    case Value::Tag::list_v: {
        std::vector<MichelineNode> elems;
        for (const Value& e : value.args)
            elems.push_back(value_to_node(e));
        return MichelineNode::seq(std::move(elems));
    }
    case Value::Tag::map_v: {
        std::vector<MichelineNode> elems;
        for (std::size_t i = 0; i < value.map_size(); ++i)
            elems.push_back(MichelineNode::prim(
                "Elt", {value_to_node(value.map_key(i)),
                        value_to_node(value.map_val(i))}));
        return MichelineNode::seq(std::move(elems));
    }
    case Value::Tag::contract_v: {
        std::string text = value.ref.address.id();
        if (!value.ref.entrypoint.empty())
            text += "%" + value.ref.entrypoint;
        return MichelineNode::string(std::move(text));
    }
    case Value::Tag::operation_v:
        throw InternalTypeError("operation values have no data syntax");
    }
    throw InternalTypeError("unhandled value shape");
}

std::string print_value(const Value& value) {
    return print_micheline(value_to_node(value));
}

namespace {

[[noreturn]] void bad_value(const MichelineNode& node, const std::string& msg) {
    throw TypeError(node.line, node.col, msg);
}

ContractRef parse_contract_literal(const std::string& text) {
    const std::size_t sep = text.find('%');
    if (sep == std::string::npos)
        return ContractRef{Address(text), ""};
    return ContractRef{Address(text.substr(0, sep)), text.substr(sep + 1)};
}

}  // namespace

Value elaborate_value(const MichelineNode& node, const Ty& ty) {
    switch (ty.tag) {
    case Ty::Tag::nat_t:
        if (node.kind != MichelineNode::Kind::int_lit)
            bad_value(node, "expected a nat literal");
        if (node.int_value < 0)
            bad_value(node, "nat literal is negative");
        return Value::integer(node.int_value);
    case Ty::Tag::int_t:
        if (node.kind != MichelineNode::Kind::int_lit)
            bad_value(node, "expected an int literal");
        return Value::integer(node.int_value);
    case Ty::Tag::mutez_t:
        if (node.kind != MichelineNode::Kind::int_lit)
            bad_value(node, "expected a mutez literal");
        if (node.int_value < 0 || node.int_value > Mutez::max_value)
            bad_value(node, "mutez literal out of range");
        return Value::integer(node.int_value);
    case Ty::Tag::address_t:
        if (node.kind != MichelineNode::Kind::string_lit)
            bad_value(node, "expected an address string");
        return Value::string(node.text);
    case Ty::Tag::bool_t:
        if (node.is_prim("True"))
            return Value::boolean(true);
        if (node.is_prim("False"))
            return Value::boolean(false);
        bad_value(node, "expected True or False");
    case Ty::Tag::string_t:
        if (node.kind != MichelineNode::Kind::string_lit)
            bad_value(node, "expected a string literal");
        return Value::string(node.text);
    case Ty::Tag::bytes_t:
        if (node.kind != MichelineNode::Kind::bytes_lit)
            bad_value(node, "expected a bytes literal");
        return Value::bytes(node.data);
    case Ty::Tag::unit_t:
        if (!node.is_prim("Unit"))
            bad_value(node, "expected Unit");
        return Value::unit();
    case Ty::Tag::pair_t: {
        if (!node.is_prim("Pair") || node.args.size() < 2)
            bad_value(node, "expected (Pair _ _)");
        // A comb literal (Pair a b c ...) right-nests, mirroring the types.
        Value second;
        if (node.args.size() == 2) {
            second = elaborate_value(node.args[1], ty.args[1]);
        } else {
            MichelineNode rest = MichelineNode::prim(
                "Pair", std::vector<MichelineNode>(node.args.begin() + 1,
                                                   node.args.end()));
            rest.line = node.line;
            rest.col = node.col;
            second = elaborate_value(rest, ty.args[1]);
        }
        return Value::pair(elaborate_value(node.args[0], ty.args[0]),
                           std::move(second));
    }
    case Ty::Tag::or_t:
        if (node.is_prim("Left") && node.args.size() == 1)
            return Value::left(elaborate_value(node.args[0], ty.args[0]));
        if (node.is_prim("Right") && node.args.size() == 1)
            return Value::right(elaborate_value(node.args[0], ty.args[1]));
        bad_value(node, "expected (Left _) or (Right _)");
    case Ty::Tag::option_t:
        if (node.is_prim("None") && node.args.empty())
            return Value::none();
        if (node.is_prim("Some") && node.args.size() == 1)
            return Value::some(elaborate_value(node.args[0], ty.args[0]));
        bad_value(node, "expected None or (Some _)");
    case Ty::Tag::map_t:
    case Ty::Tag::big_map_t: {
        if (node.kind != MichelineNode::Kind::seq)
            bad_value(node, "expected a sequence of Elt entries");
        std::vector<Value> flat;
        for (const MichelineNode& elt : node.args) {
            if (!elt.is_prim("Elt") || elt.args.size() != 2)
                bad_value(elt, "expected (Elt key value)");
            Value key = elaborate_value(elt.args[0], ty.args[0]);
            if (flat.size() >= 2 &&
                compare_values(flat[flat.size() - 2], key) >= 0)
                bad_value(elt, "map keys must be strictly ascending");
            flat.push_back(std::move(key));
            flat.push_back(elaborate_value(elt.args[1], ty.args[1]));
        }
        return Value::map(std::move(flat));
    }
    case Ty::Tag::list_t: {
        if (node.kind != MichelineNode::Kind::seq)
            bad_value(node, "expected a sequence");
        std::vector<Value> elems;
        for (const MichelineNode& e : node.args)
            elems.push_back(elaborate_value(e, ty.args[0]));
        return Value::list(std::move(elems));
    }
    case Ty::Tag::contract_t: {
        if (node.kind != MichelineNode::Kind::string_lit)
            bad_value(node, "expected a contract address string");
        try {
            return Value::contract(parse_contract_literal(node.text));
        } catch (const Error& e) {
            bad_value(node, e.what());
        }
    }
    case Ty::Tag::operation_t:
        bad_value(node, "operation values cannot be written as data");
    }
    throw InternalTypeError("unhandled type in value elaboration");
}

}  // namespace fa12
