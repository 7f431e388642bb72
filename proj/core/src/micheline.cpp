// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/micheline.hpp>

#include <cctype>
#include <sstream>

namespace fa12 {

MichelineNode MichelineNode::integer(BigInt value) {
    MichelineNode n;
    n.kind = Kind::int_lit;
    n.int_value = std::move(value);
    return n;
}

MichelineNode MichelineNode::string(std::string text) {
    MichelineNode n;
    n.kind = Kind::string_lit;
    n.text = std::move(text);
    return n;
}

MichelineNode MichelineNode::bytes(std::vector<std::uint8_t> data) {
    MichelineNode n;
    n.kind = Kind::bytes_lit;
    n.data = std::move(data);
    return n;
}

MichelineNode MichelineNode::prim(std::string name,
                                  std::vector<MichelineNode> args,
                                  std::vector<std::string> annots) {
    MichelineNode n;
    n.kind = Kind::prim;
    n.text = std::move(name);
    n.args = std::move(args);
    n.annots = std::move(annots);
    return n;
}

MichelineNode MichelineNode::seq(std::vector<MichelineNode> elems) {
    MichelineNode n;
    n.kind = Kind::seq;
    n.args = std::move(elems);
    return n;
}

bool MichelineNode::equals(const MichelineNode& other) const {
    if (kind != other.kind)
        return false;
    switch (kind) {
    case Kind::int_lit:
        return int_value == other.int_value;
    case Kind::string_lit:
        return text == other.text;
    case Kind::bytes_lit:
        return data == other.data;
    case Kind::prim:
        if (text != other.text || annots != other.annots)
            return false;
        [[fallthrough]];
    case Kind::seq:
        if (args.size() != other.args.size())
            return false;
        for (std::size_t i = 0; i < args.size(); ++i)
            if (!args[i].equals(other.args[i]))
                return false;
        return true;
    }
    return false;
}

ParseError::ParseError(int line, int col, const std::string& msg)
    : Error("parse error at " + std::to_string(line) + ":" +
            std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

namespace {

struct Token {
    enum class Kind {
        int_lit,
        string_lit,
        bytes_lit,
        ident,
        annot,
        lbrace,
        rbrace,
        lparen,
        rparen,
        semi,
        end,
    };

    Kind kind = Kind::end;
    std::string text;  // ident name, annot text, string contents
    BigInt number;
    std::vector<std::uint8_t> data;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_blank();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (pos_ >= text_.size()) {
            tok.kind = Token::Kind::end;
            return tok;
        }
        const char c = text_[pos_];
        switch (c) {
        case '{': advance(); tok.kind = Token::Kind::lbrace; return tok;
        case '}': advance(); tok.kind = Token::Kind::rbrace; return tok;
        case '(': advance(); tok.kind = Token::Kind::lparen; return tok;
        case ')': advance(); tok.kind = Token::Kind::rparen; return tok;
        case ';': advance(); tok.kind = Token::Kind::semi; return tok;
        case '"': return lex_string(tok);
        case '%':
        case '@':
        case ':': return lex_annot(tok);
        default: break;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return lex_number(tok);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return lex_ident(tok);
        fail("unexpected character '" + std::string(1, c) + "'");
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, col_, msg);
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (c == '/' && pos_ + 1 < text_.size() &&
                       text_[pos_ + 1] == '*') {
                const int open_line = line_;
                const int open_col = col_;
                advance();
                advance();
                while (true) {
                    if (pos_ + 1 >= text_.size())
                        throw ParseError(open_line, open_col,
                                         "unterminated block comment");
                    if (text_[pos_] == '*' && text_[pos_ + 1] == '/') {
                        advance();
                        advance();
                        break;
                    }
                    advance();
                }
            } else {
                break;
            }
        }
    }

    Token lex_string(Token tok) {
        advance();  // opening quote
        std::string out;
        while (true) {
            if (pos_ >= text_.size())
                throw ParseError(tok.line, tok.col, "unterminated string");
            const char c = text_[pos_];
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                advance();
                if (pos_ >= text_.size())
                    throw ParseError(tok.line, tok.col, "unterminated string");
                switch (text_[pos_]) {
                case 'n': out.push_back('\n'); break;
                case 'r': out.push_back('\r'); break;
                case 't': out.push_back('\t'); break;
                case '\\': out.push_back('\\'); break;
                case '"': out.push_back('"'); break;
                default:
                    fail("unknown string escape '\\" +
                         std::string(1, text_[pos_]) + "'");
                }
                advance();
            } else if (c == '\n') {
                throw ParseError(tok.line, tok.col,
                                 "newline inside string literal");
            } else {
                out.push_back(c);
                advance();
            }
        }
        tok.kind = Token::Kind::string_lit;
        tok.text = std::move(out);
        return tok;
    }

    Token lex_annot(Token tok) {
        std::string out(1, text_[pos_]);
        advance();
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                c == '.' || c == '%' || c == '@') {
                out.push_back(c);
                advance();
            } else {
                break;
            }
        }
        tok.kind = Token::Kind::annot;
        tok.text = std::move(out);
        return tok;
    }

    Token lex_number(Token tok) {
        std::string digits;
        if (text_[pos_] == '-') {
            digits.push_back('-');
            advance();
            if (pos_ >= text_.size() ||
                !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected digits after '-'");
        }
        if (pos_ + 1 < text_.size() && text_[pos_] == '0' &&
            text_[pos_ + 1] == 'x' && digits.empty())
            return lex_bytes(tok);
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            digits.push_back(text_[pos_]);
            advance();
        }
        tok.kind = Token::Kind::int_lit;
        tok.number = BigInt(digits);
        return tok;
    }

    Token lex_bytes(Token tok) {
        advance();  // 0
        advance();  // x
        std::string hex;
        while (pos_ < text_.size() &&
               std::isxdigit(static_cast<unsigned char>(text_[pos_]))) {
            hex.push_back(text_[pos_]);
            advance();
        }
        if (hex.size() % 2 != 0)
            fail("odd number of hex digits in bytes literal");
        std::vector<std::uint8_t> data;
        for (std::size_t i = 0; i < hex.size(); i += 2)
            data.push_back(static_cast<std::uint8_t>(
                std::stoi(hex.substr(i, 2), nullptr, 16)));
        tok.kind = Token::Kind::bytes_lit;
        tok.data = std::move(data);
        return tok;
    }

    Token lex_ident(Token tok) {
        std::string out;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back(c);
                advance();
            } else {
                break;
            }
        }
        tok.kind = Token::Kind::ident;
        tok.text = std::move(out);
        return tok;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) {
        tok_ = lexer_.next();
    }

    MichelineNode parse_toplevel() {
        std::vector<MichelineNode> exprs;
        bool saw_semi = false;
        while (tok_.kind != Token::Kind::end) {
            exprs.push_back(parse_application());
            if (tok_.kind == Token::Kind::semi) {
                saw_semi = true;
                eat();
            } else if (tok_.kind != Token::Kind::end) {
                fail("expected ';' or end of input");
            }
        }
        if (exprs.size() == 1 && !saw_semi)
            return std::move(exprs.front());
        return MichelineNode::seq(std::move(exprs));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(tok_.line, tok_.col, msg);
    }

    void eat() { tok_ = lexer_.next(); }

    bool at_atom_start() const {
        switch (tok_.kind) {
        case Token::Kind::int_lit:
        case Token::Kind::string_lit:
        case Token::Kind::bytes_lit:
        case Token::Kind::ident:
        case Token::Kind::lbrace:
        case Token::Kind::lparen:
            return true;
        default:
            return false;
        }
    }

    // A primitive applied to annotations and arguments, or a bare atom.
    MichelineNode parse_application() {
        if (tok_.kind != Token::Kind::ident)
            return parse_atom();
        MichelineNode node = MichelineNode::prim(tok_.text);
        node.line = tok_.line;
        node.col = tok_.col;
        eat();
        while (tok_.kind == Token::Kind::annot) {
            node.annots.push_back(tok_.text);
            eat();
        }
        while (at_atom_start())
            node.args.push_back(parse_atom());
        return node;
    }

    // An expression in argument position: literals, sequences, parenthesized
    // applications, or a bare primitive name.
    MichelineNode parse_atom() {
        MichelineNode node;
        const int line = tok_.line;
        const int col = tok_.col;
        switch (tok_.kind) {
        case Token::Kind::int_lit:
            node = MichelineNode::integer(tok_.number);
            eat();
            break;
        case Token::Kind::string_lit:
            node = MichelineNode::string(tok_.text);
            eat();
            break;
        case Token::Kind::bytes_lit:
            node = MichelineNode::bytes(tok_.data);
            eat();
            break;
        case Token::Kind::ident:
            node = MichelineNode::prim(tok_.text);
            eat();
            break;
        case Token::Kind::lbrace: {
            eat();
            std::vector<MichelineNode> elems;
            while (tok_.kind != Token::Kind::rbrace) {
                elems.push_back(parse_application());
                if (tok_.kind == Token::Kind::semi)
                    eat();
                else if (tok_.kind != Token::Kind::rbrace)
                    fail("expected ';' or '}' in sequence");
            }
            eat();
            node = MichelineNode::seq(std::move(elems));
            break;
        }
        case Token::Kind::lparen:
            eat();
            node = parse_application();
            if (tok_.kind != Token::Kind::rparen)
                fail("expected ')'");
            eat();
            break;
        default:
            fail("expected an expression");
        }
        node.line = line;
        node.col = col;
        return node;
    }

    Lexer lexer_;
    Token tok_;
};

bool needs_parens(const MichelineNode& node) {
    return node.kind == MichelineNode::Kind::prim &&
           (!node.args.empty() || !node.annots.empty());
}

void print_node(const MichelineNode& node, bool arg_position,
                std::ostringstream& out) {
    switch (node.kind) {
    case MichelineNode::Kind::int_lit:
        out << node.int_value.str();
        break;
    case MichelineNode::Kind::string_lit:
        out << '"';
        for (const char c : node.text) {
            switch (c) {
            case '\n': out << "\\n"; break;
            case '\r': out << "\\r"; break;
            case '\t': out << "\\t"; break;
            case '\\': out << "\\\\"; break;
            case '"': out << "\\\""; break;
            default: out << c;
            }
        }
        out << '"';
        break;
    case MichelineNode::Kind::bytes_lit: {
        out << "0x";
        static const char* digits = "0123456789abcdef";
        for (const std::uint8_t b : node.data)
            out << digits[b >> 4] << digits[b & 0xf];
        break;
    }
    case MichelineNode::Kind::prim: {
        const bool parens = arg_position && needs_parens(node);
        if (parens)
            out << '(';
        out << node.text;
        for (const std::string& a : node.annots)
            out << ' ' << a;
        for (const MichelineNode& arg : node.args) {
            out << ' ';
            print_node(arg, true, out);
        }
        if (parens)
            out << ')';
        break;
    }
    case MichelineNode::Kind::seq:
        if (node.args.empty()) {
            out << "{}";
            break;
        }
        out << "{ ";
        for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i)
                out << " ; ";
            print_node(node.args[i], false, out);
        }
        out << " }";
        break;
    }
}

}  // namespace

MichelineNode parse_micheline(const std::string& text) {
    return Parser(text).parse_toplevel();
}

std::string print_micheline(const MichelineNode& node) {
    std::ostringstream out;
    print_node(node, false, out);
    return out.str();
}

}  // namespace fa12
