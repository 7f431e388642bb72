// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/michelson.hpp>

namespace fa12 {

namespace {

Ty make(Ty::Tag tag, std::vector<Ty> args = {}) {
    Ty ty;
    ty.tag = tag;
    ty.args = std::move(args);
    return ty;
}

}  // namespace

Ty Ty::nat() { return make(Tag::nat_t); }
Ty Ty::int_() { return make(Tag::int_t); }
Ty Ty::mutez() { return make(Tag::mutez_t); }
Ty Ty::address() { return make(Tag::address_t); }
Ty Ty::bool_() { return make(Tag::bool_t); }
Ty Ty::string() { return make(Tag::string_t); }
Ty Ty::bytes() { return make(Tag::bytes_t); }
Ty Ty::unit() { return make(Tag::unit_t); }
Ty Ty::pair(Ty left, Ty right) {
    return make(Tag::pair_t, {std::move(left), std::move(right)});
}
Ty Ty::or_(Ty left, Ty right) {
    return make(Tag::or_t, {std::move(left), std::move(right)});
}
Ty Ty::option(Ty inner) { return make(Tag::option_t, {std::move(inner)}); }
Ty Ty::map(Ty key, Ty value) {
    return make(Tag::map_t, {std::move(key), std::move(value)});
}
Ty Ty::big_map(Ty key, Ty value) {
    return make(Tag::big_map_t, {std::move(key), std::move(value)});
}
Ty Ty::list(Ty inner) { return make(Tag::list_t, {std::move(inner)}); }
Ty Ty::contract(Ty param) {
    return make(Tag::contract_t, {std::move(param)});
}
Ty Ty::operation() { return make(Tag::operation_t); }

bool Ty::operator==(const Ty& other) const {
    if (tag != other.tag || args.size() != other.args.size())
        return false;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!(args[i] == other.args[i]))
            return false;
    return true;
}

namespace {

const char* tag_name(Ty::Tag tag) {
    switch (tag) {
    case Ty::Tag::nat_t: return "nat";
    case Ty::Tag::int_t: return "int";
    case Ty::Tag::mutez_t: return "mutez";
    case Ty::Tag::address_t: return "address";
    case Ty::Tag::bool_t: return "bool";
    case Ty::Tag::string_t: return "string";
    case Ty::Tag::bytes_t: return "bytes";
    case Ty::Tag::unit_t: return "unit";
    case Ty::Tag::pair_t: return "pair";
    case Ty::Tag::or_t: return "or";
    case Ty::Tag::option_t: return "option";
    case Ty::Tag::map_t: return "map";
    case Ty::Tag::big_map_t: return "big_map";
    case Ty::Tag::list_t: return "list";
    case Ty::Tag::contract_t: return "contract";
    case Ty::Tag::operation_t: return "operation";
    }
    return "?";
}

MichelineNode ty_to_node(const Ty& ty) {
    std::vector<MichelineNode> args;
    for (const Ty& a : ty.args)
        args.push_back(ty_to_node(a));
    return MichelineNode::prim(tag_name(ty.tag), std::move(args));
}

}  // namespace

std::string Ty::str() const {
    return print_micheline(ty_to_node(*this));
}

bool is_comparable(const Ty& ty) {
    switch (ty.tag) {
    case Ty::Tag::nat_t:
    case Ty::Tag::int_t:
    case Ty::Tag::mutez_t:
    case Ty::Tag::address_t:
    case Ty::Tag::bool_t:
    case Ty::Tag::string_t:
    case Ty::Tag::bytes_t:
        return true;
    case Ty::Tag::pair_t:
        return is_comparable(ty.args[0]) && is_comparable(ty.args[1]);
    default:
        return false;
    }
}

bool is_pushable(const Ty& ty) {
    switch (ty.tag) {
    case Ty::Tag::operation_t:
    case Ty::Tag::contract_t:
    case Ty::Tag::big_map_t:
        return false;
    default:
        for (const Ty& a : ty.args)
            if (!is_pushable(a))
                return false;
        return true;
    }
}

TypeError::TypeError(int line, int col, const std::string& msg)
    : Error("type error at " + std::to_string(line) + ":" +
            std::to_string(col) + ": " + msg) {}

UnsupportedInstruction::UnsupportedInstruction(int line, int col,
                                               const std::string& name)
    : Error("unsupported instruction at " + std::to_string(line) + ":" +
            std::to_string(col) + ": " + name) {}

namespace {

[[noreturn]] void unknown_type(const MichelineNode& node,
                               const std::string& msg) {
    throw UnknownType("at " + std::to_string(node.line) + ":" +
                      std::to_string(node.col) + ": " + msg);
}

struct TypeRule {
    Ty::Tag tag;
    std::size_t arity;
};

std::optional<TypeRule> type_rule(const std::string& name) {
    if (name == "nat") return TypeRule{Ty::Tag::nat_t, 0};
    if (name == "int") return TypeRule{Ty::Tag::int_t, 0};
    if (name == "mutez") return TypeRule{Ty::Tag::mutez_t, 0};
    if (name == "address") return TypeRule{Ty::Tag::address_t, 0};
    if (name == "bool") return TypeRule{Ty::Tag::bool_t, 0};
    if (name == "string") return TypeRule{Ty::Tag::string_t, 0};
    if (name == "bytes") return TypeRule{Ty::Tag::bytes_t, 0};
    if (name == "unit") return TypeRule{Ty::Tag::unit_t, 0};
    if (name == "pair") return TypeRule{Ty::Tag::pair_t, 2};
    if (name == "or") return TypeRule{Ty::Tag::or_t, 2};
    if (name == "option") return TypeRule{Ty::Tag::option_t, 1};
    if (name == "map") return TypeRule{Ty::Tag::map_t, 2};
    if (name == "big_map") return TypeRule{Ty::Tag::big_map_t, 2};
    if (name == "list") return TypeRule{Ty::Tag::list_t, 1};
    if (name == "contract") return TypeRule{Ty::Tag::contract_t, 1};
    if (name == "operation") return TypeRule{Ty::Tag::operation_t, 0};
    return std::nullopt;
}

}  // namespace

Ty elaborate_type(const MichelineNode& node) {
    if (node.kind != MichelineNode::Kind::prim)
        unknown_type(node, "expected a type expression");
    const auto rule = type_rule(node.text);
    if (!rule)
        unknown_type(node, "unknown type '" + node.text + "'");
    const bool nary_pair =
        rule->tag == Ty::Tag::pair_t && node.args.size() > 2;
    if (node.args.size() != rule->arity && !nary_pair)
        unknown_type(node, "type '" + node.text + "' expects " +
                               std::to_string(rule->arity) + " argument" +
                               (rule->arity == 1 ? "" : "s") + ", got " +
                               std::to_string(node.args.size()));
    Ty ty;
    ty.tag = rule->tag;
    ty.annots = node.annots;
    for (const MichelineNode& arg : node.args)
        ty.args.push_back(elaborate_type(arg));
    // A comb pair type (pair a b c ...) right-nests into binary pairs.
    while (ty.args.size() > 2) {
        Ty right = Ty::pair(ty.args[ty.args.size() - 2], ty.args.back());
        ty.args.pop_back();
        ty.args.back() = std::move(right);
    }
    if ((ty.tag == Ty::Tag::map_t || ty.tag == Ty::Tag::big_map_t) &&
        !is_comparable(ty.args[0]))
        unknown_type(node, "map key type " + ty.args[0].str() +
                               " is not comparable");
    return ty;
}

ContractScript parse_contract(const MichelineNode& node) {
    if (node.kind != MichelineNode::Kind::seq)
        throw MissingSection("parameter");
    std::optional<Ty> parameter;
    std::optional<Ty> storage;
    std::optional<MichelineNode> code;
    for (const MichelineNode& section : node.args) {
        if (section.is_prim("parameter")) {
            if (parameter)
                throw DuplicateSection("parameter");
            if (section.args.size() != 1)
                unknown_type(section, "parameter expects one type argument");
            parameter = elaborate_type(section.args[0]);
        } else if (section.is_prim("storage")) {
            if (storage)
                throw DuplicateSection("storage");
            if (section.args.size() != 1)
                unknown_type(section, "storage expects one type argument");
            storage = elaborate_type(section.args[0]);
        } else if (section.is_prim("code")) {
            if (code)
                throw DuplicateSection("code");
            if (section.args.size() != 1 ||
                section.args[0].kind != MichelineNode::Kind::seq)
                unknown_type(section, "code expects one sequence argument");
            code = section.args[0];
        } else {
            unknown_type(section, "expected a parameter, storage, or code "
                                  "section");
        }
    }
    if (!parameter)
        throw MissingSection("parameter");
    if (!storage)
        throw MissingSection("storage");
    if (!code)
        throw MissingSection("code");
    return ContractScript{std::move(*parameter), std::move(*storage),
                          std::move(*code)};
}

ContractScript parse_contract_text(const std::string& text) {
    return parse_contract(parse_micheline(text));
}

namespace {

bool has_field_annot(const Ty& ty, const std::string& name) {
    for (const std::string& a : ty.annots)
        if (a.size() > 1 && a[0] == '%' && a.compare(1, std::string::npos, name) == 0)
            return true;
    return false;
}

bool find_entrypoint_walk(const Ty& ty, const std::string& name,
                          std::vector<bool>& path, EntrypointPath& out) {
    if (has_field_annot(ty, name)) {
        out.rights = path;
        out.ty = ty;
        return true;
    }
    if (ty.tag == Ty::Tag::or_t) {
        path.push_back(false);
        if (find_entrypoint_walk(ty.args[0], name, path, out))
            return true;
        path.back() = true;
        if (find_entrypoint_walk(ty.args[1], name, path, out))
            return true;
        path.pop_back();
    }
    return false;
}

}  // namespace

std::optional<EntrypointPath> find_entrypoint(const Ty& parameter_ty,
                                              const std::string& name) {
    if (name.empty())
        return EntrypointPath{{}, parameter_ty};
    EntrypointPath out;
    std::vector<bool> path;
    if (find_entrypoint_walk(parameter_ty, name, path, out))
        return out;
    return std::nullopt;
}

}  // namespace fa12
