// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <fa12/ledger.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace fa12 {

/// One node of Micheline concrete syntax: an integer, string, or bytes
/// literal, a primitive application, or a brace-delimited sequence.
struct MichelineNode {
    enum class Kind { int_lit, string_lit, bytes_lit, prim, seq };

    static MichelineNode integer(BigInt value);
    static MichelineNode string(std::string text);
    static MichelineNode bytes(std::vector<std::uint8_t> data);
    static MichelineNode prim(std::string name,
                              std::vector<MichelineNode> args = {},
                              std::vector<std::string> annots = {});
    static MichelineNode seq(std::vector<MichelineNode> elems = {});

    Kind kind = Kind::seq;
    BigInt int_value;                // int_lit
    std::string text;                // string_lit contents or prim name
    std::vector<std::uint8_t> data;  // bytes_lit
    std::vector<MichelineNode> args; // prim arguments or seq elements
    std::vector<std::string> annots; // prim annotations, leading %/@/: kept

    // source position, 1-based; 0 when synthesized
    int line = 0;
    int col = 0;

    bool is_prim(const std::string& name) const {
        return kind == Kind::prim && text == name;
    }

    /// Structural equality; source positions are ignored.
    bool equals(const MichelineNode& other) const;
};

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& msg);

    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

/// Parse Micheline text: literals, primitive applications, sequences,
/// annotations, # line comments and /* */ block comments. A toplevel with
/// semicolons (a contract file) parses as a sequence; a single bare
/// expression parses as itself.
MichelineNode parse_micheline(const std::string& text);

/// Canonical single-spaced rendering; parse_micheline(print_micheline(n))
/// equals n structurally.
std::string print_micheline(const MichelineNode& node);

}  // namespace fa12
