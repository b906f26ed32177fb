// Copyright 2026 The qassert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qassert/parser.h"

#include <cctype>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "qassert/error.h"
#include "qassert/gates.h"

namespace qassert {

namespace {

enum class Tok {
    Ident,
    Qubit,
    Number,
    Imag,
    Ket,
    Join,
    Meet,
    Tilde,
    Tensor,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Equals,
    Star,
    Plus,
    Minus,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    size_t line;
    size_t column;
};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    size_t i = 0;
    size_t line = 1;
    size_t line_start = 0;
    auto col = [&](size_t at) { return at - line_start + 1; };
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            line++;
            i++;
            line_start = i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            i++;
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') {
                i++;
            }
            continue;
        }
        size_t start = i;
        if (is_ident_start(c)) {
            while (i < s.size() && is_ident_char(s[i])) {
                i++;
            }
            std::string word(s.substr(start, i - start));
            bool qubit = word.size() > 1 && word[0] == 'q';
            for (size_t k = 1; qubit && k < word.size(); k++) {
                qubit = is_digit(word[k]);
            }
            out.push_back(Token{qubit ? Tok::Qubit : Tok::Ident, word, line, col(start)});
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
            while (i < s.size() && is_digit(s[i])) {
                i++;
            }
            if (i < s.size() && s[i] == '.') {
                i++;
                while (i < s.size() && is_digit(s[i])) {
                    i++;
                }
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) {
                    j++;
                }
                if (j < s.size() && is_digit(s[j])) {
                    i = j;
                    while (i < s.size() && is_digit(s[i])) {
                        i++;
                    }
                }
            }
            std::string num(s.substr(start, i - start));
            if (i < s.size() && s[i] == 'i' && (i + 1 >= s.size() || !is_ident_char(s[i + 1]))) {
                i++;
                out.push_back(Token{Tok::Imag, num, line, col(start)});
            } else {
                out.push_back(Token{Tok::Number, num, line, col(start)});
            }
            continue;
        }
        if (c == '|') {
            size_t j = i + 1;
            while (j < s.size() && (s[j] == '0' || s[j] == '1' || s[j] == '+' || s[j] == '-')) {
                j++;
            }
            if (j > i + 1 && j < s.size() && s[j] == '>') {
                out.push_back(Token{Tok::Ket, std::string(s.substr(i + 1, j - i - 1)), line, col(start)});
                i = j + 1;
            } else {
                out.push_back(Token{Tok::Join, "|", line, col(start)});
                i++;
            }
            continue;
        }
        if (c == '(' && s.substr(i, 3) == "(x)") {
            out.push_back(Token{Tok::Tensor, "(x)", line, col(start)});
            i += 3;
            continue;
        }
        Tok kind;
        switch (c) {
            case '&':
                kind = Tok::Meet;
                break;
            case '~':
                kind = Tok::Tilde;
                break;
            case '(':
                kind = Tok::LParen;
                break;
            case ')':
                kind = Tok::RParen;
                break;
            case '{':
                kind = Tok::LBrace;
                break;
            case '}':
                kind = Tok::RBrace;
                break;
            case '[':
                kind = Tok::LBracket;
                break;
            case ']':
                kind = Tok::RBracket;
                break;
            case ',':
                kind = Tok::Comma;
                break;
            case ';':
                kind = Tok::Semi;
                break;
            case ':':
                kind = Tok::Colon;
                break;
            case '=':
                kind = Tok::Equals;
                break;
            case '*':
                kind = Tok::Star;
                break;
            case '+':
                kind = Tok::Plus;
                break;
            case '-':
                kind = Tok::Minus;
                break;
            default:
                throw ParseError(
                    ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", line, col(start));
        }
        out.push_back(Token{kind, std::string(1, c), line, col(start)});
        i++;
    }
    out.push_back(Token{Tok::End, "", line, col(i)});
    return out;
}

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    }

    Program parse() {
        expect_word("qubits");
        const Token &count = expect(Tok::Number, "qubit count");
        program_.qubit_count = parse_count(count);
        if (program_.qubit_count == 0 || program_.qubit_count > 16) {
            fail(ErrorCode::SyntaxError, "qubit count must be between 1 and 16", count);
        }
        expect(Tok::Semi, "';'");
        while (peek().kind != Tok::End) {
            if (is_word("defgate")) {
                parse_gatedef();
            } else {
                program_.body.push_back(parse_statement());
            }
        }
        return std::move(program_);
    }

   private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    Program program_;
    std::set<std::string> sites_;

    const Token &peek(size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }

    const Token &next() {
        const Token &t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) {
            pos_++;
        }
        return t;
    }

    [[noreturn]] void fail(ErrorCode code, const std::string &message, const Token &at) const {
        throw ParseError(code, message, at.line, at.column);
    }

    bool is_word(const char *word) const {
        return peek().kind == Tok::Ident && peek().text == word;
    }

    const Token &expect(Tok kind, const char *what) {
        if (peek().kind != kind) {
            fail(ErrorCode::SyntaxError, std::string("expected ") + what + " but found '" + peek().text + "'", peek());
        }
        return next();
    }

    const Token &expect_word(const char *word) {
        if (!is_word(word)) {
            fail(ErrorCode::SyntaxError, std::string("expected '") + word + "' but found '" + peek().text + "'", peek());
        }
        return next();
    }

    size_t parse_count(const Token &t) const {
        for (char c : t.text) {
            if (!is_digit(c)) {
                fail(ErrorCode::SyntaxError, "expected a non-negative integer", t);
            }
        }
        if (t.text.size() > 9) {
            fail(ErrorCode::SyntaxError, "integer too large", t);
        }
        return static_cast<size_t>(std::stoul(t.text));
    }

    double parse_real(const Token &t) const {
        return std::strtod(t.text.c_str(), nullptr);
    }

    // One signed component: a real number, an imaginary number, or bare i.
    Complex parse_component(bool &was_imag) {
        double sign = 1;
        if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) {
            if (next().kind == Tok::Minus) {
                sign = -1;
            }
        }
        const Token &t = peek();
        if (t.kind == Tok::Number) {
            next();
            was_imag = false;
            return Complex(sign * parse_real(t), 0);
        }
        if (t.kind == Tok::Imag) {
            next();
            was_imag = true;
            return Complex(0, sign * parse_real(t));
        }
        if (t.kind == Tok::Ident && t.text == "i") {
            next();
            was_imag = true;
            return Complex(0, sign);
        }
        fail(ErrorCode::SyntaxError, "expected a number", t);
    }

    Complex parse_complex() {
        bool imag = false;
        Complex value = parse_component(imag);
        if (!imag && (peek().kind == Tok::Plus || peek().kind == Tok::Minus) &&
            (peek(1).kind == Tok::Imag || (peek(1).kind == Tok::Ident && peek(1).text == "i"))) {
            bool second_imag = false;
            value += parse_component(second_imag);
        }
        return value;
    }

    void parse_gatedef() {
        const Token &kw = next();
        const Token &name = expect(Tok::Ident, "gate name");
        if (is_builtin_gate(name.text)) {
            fail(ErrorCode::SyntaxError, "cannot redefine built-in gate " + name.text, name);
        }
        if (program_.gate_definitions.count(name.text)) {
            fail(ErrorCode::SyntaxError, "gate " + name.text + " defined twice", name);
        }
        expect(Tok::Equals, "'='");
        std::vector<std::vector<Complex>> rows;
        expect(Tok::LBracket, "'['");
        do {
            expect(Tok::LBracket, "'['");
            std::vector<Complex> row;
            do {
                row.push_back(parse_complex());
            } while (peek().kind == Tok::Comma && next().kind == Tok::Comma);
            expect(Tok::RBracket, "']'");
            rows.push_back(std::move(row));
        } while (peek().kind == Tok::Comma && next().kind == Tok::Comma);
        expect(Tok::RBracket, "']'");
        expect(Tok::Semi, "';'");
        size_t d = rows.size();
        bool power_of_two = d >= 2 && (d & (d - 1)) == 0;
        for (const auto &row : rows) {
            if (row.size() != d) {
                fail(ErrorCode::NonUnitaryGateDef, "gate " + name.text + " is not square", kw);
            }
        }
        if (!power_of_two) {
            fail(ErrorCode::NonUnitaryGateDef, "gate " + name.text + " dimension is not a power of two", kw);
        }
        ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (size_t r = 0; r < d; r++) {
            for (size_t c = 0; c < d; c++) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
            }
        }
        if (!is_unitary(m, 1e-8)) {
            fail(ErrorCode::NonUnitaryGateDef, "gate " + name.text + " is not unitary within 1e-8", kw);
        }
        program_.gate_definitions.emplace(name.text, std::move(m));
    }

    std::vector<size_t> parse_qlist() {
        std::vector<size_t> out;
        std::set<size_t> seen;
        do {
            const Token &t = expect(Tok::Qubit, "a qubit like q0");
            size_t q = std::stoul(t.text.substr(1));
            if (t.text.size() > 10 || q >= program_.qubit_count) {
                fail(ErrorCode::QubitOutOfRange, "qubit " + t.text + " is not declared", t);
            }
            if (!seen.insert(q).second) {
                fail(ErrorCode::SyntaxError, "qubit " + t.text + " listed twice", t);
            }
            out.push_back(q);
        } while (peek().kind == Tok::Comma && next().kind == Tok::Comma);
        return out;
    }

    std::vector<std::string> parse_bitset(size_t width) {
        std::vector<std::string> out;
        expect(Tok::LBrace, "'{'");
        do {
            const Token &t = expect(Tok::Number, "a bitstring");
            bool ok = t.text.size() == width;
            for (char c : t.text) {
                ok = ok && (c == '0' || c == '1');
            }
            if (!ok) {
                fail(
                    ErrorCode::SyntaxError, "bitstring '" + t.text + "' must have " + std::to_string(width) + " bits",
                    t);
            }
            out.push_back(t.text);
        } while (peek().kind == Tok::Comma && next().kind == Tok::Comma);
        expect(Tok::RBrace, "'}'");
        return out;
    }

    Block parse_block() {
        expect(Tok::LBrace, "'{'");
        Block out;
        while (peek().kind != Tok::RBrace) {
            if (peek().kind == Tok::End) {
                fail(ErrorCode::SyntaxError, "unterminated block", peek());
            }
            out.push_back(parse_statement());
        }
        next();
        return out;
    }

    Statement parse_statement() {
        const Token &first = peek();
        Statement stmt;
        stmt.location = SourceLocation{first.line, first.column};
        if (first.kind != Tok::Ident) {
            fail(ErrorCode::SyntaxError, "expected a statement but found '" + first.text + "'", first);
        }
        if (first.text == "skip") {
            next();
            expect(Tok::Semi, "';'");
            stmt.node = SkipStmt{};
        } else if (first.text == "init") {
            next();
            InitStmt s{parse_qlist()};
            expect(Tok::Semi, "';'");
            stmt.node = std::move(s);
        } else if (first.text == "assert") {
            stmt.node = parse_assert();
        } else if (first.text == "if") {
            next();
            IfStmt s;
            expect_word("measure");
            expect(Tok::LParen, "'('");
            s.qubits = parse_qlist();
            expect(Tok::RParen, "')'");
            expect_word("in");
            s.outcomes = parse_bitset(s.qubits.size());
            s.then_body = parse_block();
            if (is_word("else")) {
                next();
                s.has_else = true;
                s.else_body = parse_block();
            }
            stmt.node = std::move(s);
        } else if (first.text == "while") {
            next();
            WhileStmt s;
            expect_word("measure");
            expect(Tok::LParen, "'('");
            s.qubits = parse_qlist();
            expect(Tok::RParen, "')'");
            expect_word("in");
            s.outcomes = parse_bitset(s.qubits.size());
            if (is_word("cap")) {
                next();
                const Token &t = expect(Tok::Number, "loop cap");
                s.cap = parse_count(t);
                if (*s.cap == 0) {
                    fail(ErrorCode::SyntaxError, "loop cap must be positive", t);
                }
            }
            s.body = parse_block();
            stmt.node = std::move(s);
        } else {
            const Token &name = next();
            GateStmt s{name.text, parse_qlist()};
            check_gate(name, s.qubits.size());
            expect(Tok::Semi, "';'");
            stmt.node = std::move(s);
        }
        return stmt;
    }

    void check_gate(const Token &name, size_t arity) {
        try {
            gate_matrix(program_, name.text, arity);
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            fail(e.code(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), name);
        }
    }

    AssertStmt parse_assert() {
        next();
        AssertStmt s;
        const Token &site = expect(Tok::Ident, "assertion site name");
        if (!sites_.insert(site.text).second) {
            fail(ErrorCode::SyntaxError, "assertion site " + site.text + " defined twice", site);
        }
        s.site = site.text;
        expect(Tok::Colon, "':'");
        const Token &expr_start = peek();
        s.expr = parse_join();
        expect_word("on");
        s.qubits = parse_qlist();
        try {
            size_t width = expr_width(s.expr);
            if (width != s.qubits.size()) {
                fail(
                    ErrorCode::BadProjectionExpr,
                    "predicate acts on " + std::to_string(width) + " qubits but " + std::to_string(s.qubits.size()) +
                        " are listed",
                    expr_start);
            }
            s.projection = std::make_shared<const Projection>(evaluate(s.expr));
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            fail(ErrorCode::BadProjectionExpr, e.what(), expr_start);
        }
        if (is_word("lowered")) {
            next();
            s.lowered = parse_hand_steps(s.qubits);
        } else {
            expect(Tok::Semi, "';'");
        }
        return s;
    }

    size_t parse_wire(const std::vector<size_t> &site_qubits) {
        const Token &t = peek();
        if (t.kind == Tok::Ident && t.text == "aux") {
            next();
            return kAuxWire;
        }
        expect(Tok::Qubit, "a qubit or aux");
        size_t q = std::stoul(t.text.substr(1));
        bool on_site = false;
        for (size_t s : site_qubits) {
            on_site = on_site || s == q;
        }
        if (!on_site) {
            fail(ErrorCode::QubitOutOfRange, "qubit " + t.text + " is not part of this assertion", t);
        }
        return q;
    }

    std::vector<HandStep> parse_hand_steps(const std::vector<size_t> &site_qubits) {
        expect(Tok::LBrace, "'{'");
        std::vector<HandStep> steps;
        while (peek().kind != Tok::RBrace) {
            const Token &head = expect(Tok::Ident, "a lowered step");
            HandStep step;
            if (head.text == "check") {
                step.kind = HandStep::Kind::Check;
                step.wires.push_back(parse_wire(site_qubits));
                if (peek().kind == Tok::Equals) {
                    next();
                    const Token &bit = expect(Tok::Number, "0 or 1");
                    if (bit.text != "0" && bit.text != "1") {
                        fail(ErrorCode::SyntaxError, "expected outcome must be 0 or 1", bit);
                    }
                    step.expected = bit.text == "1" ? 1 : 0;
                }
            } else if (head.text == "abort") {
                step.kind = HandStep::Kind::Abort;
            } else {
                step.kind = HandStep::Kind::Gate;
                step.gate = head.text;
                std::set<size_t> seen;
                do {
                    size_t w = parse_wire(site_qubits);
                    if (!seen.insert(w).second) {
                        fail(ErrorCode::SyntaxError, "wire listed twice", head);
                    }
                    step.wires.push_back(w);
                } while (peek().kind == Tok::Comma && next().kind == Tok::Comma);
                check_gate(head, step.wires.size());
            }
            expect(Tok::Semi, "';'");
            steps.push_back(std::move(step));
        }
        next();
        return steps;
    }

    ProjExpr binary(ProjExpr::Kind kind, ProjExpr left, ProjExpr right) {
        ProjExpr e;
        e.kind = kind;
        e.operands.push_back(std::move(left));
        e.operands.push_back(std::move(right));
        return e;
    }

    ProjExpr parse_join() {
        ProjExpr left = parse_meet();
        while (peek().kind == Tok::Join) {
            next();
            left = binary(ProjExpr::Kind::Join, std::move(left), parse_meet());
        }
        return left;
    }

    ProjExpr parse_meet() {
        ProjExpr left = parse_tensor();
        while (peek().kind == Tok::Meet) {
            next();
            left = binary(ProjExpr::Kind::Meet, std::move(left), parse_tensor());
        }
        return left;
    }

    ProjExpr parse_tensor() {
        ProjExpr left = parse_prefix();
        while (peek().kind == Tok::Tensor) {
            next();
            left = binary(ProjExpr::Kind::Tensor, std::move(left), parse_prefix());
        }
        return left;
    }

    ProjExpr parse_prefix() {
        if (peek().kind == Tok::Tilde) {
            next();
            ProjExpr e;
            e.kind = ProjExpr::Kind::Complement;
            e.operands.push_back(parse_prefix());
            return e;
        }
        return parse_atom();
    }

    ProjExpr parse_atom() {
        const Token &t = peek();
        if (t.kind == Tok::LParen) {
            next();
            ProjExpr inner = parse_join();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind == Tok::Ident && t.text == "I") {
            next();
            expect(Tok::LBracket, "'['");
            ProjExpr e;
            e.kind = ProjExpr::Kind::Identity;
            const Token &w = expect(Tok::Number, "qubit count");
            e.width = parse_count(w);
            if (e.width == 0) {
                fail(ErrorCode::BadProjectionExpr, "identity needs at least one qubit", w);
            }
            expect(Tok::RBracket, "']'");
            return e;
        }
        if (t.kind == Tok::Ident && t.text == "span") {
            next();
            expect(Tok::LBrace, "'{'");
            ProjExpr e;
            e.kind = ProjExpr::Kind::Span;
            do {
                e.kets.push_back(parse_ketsum());
            } while (peek().kind == Tok::Comma && next().kind == Tok::Comma);
            expect(Tok::RBrace, "'}'");
            return e;
        }
        fail(ErrorCode::BadProjectionExpr, "expected span{...}, I[k], ~, or '(' but found '" + t.text + "'", t);
    }

    KetTerm parse_kterm(double sign) {
        KetTerm term;
        const Token &t = peek();
        if (t.kind == Tok::Number) {
            next();
            term.coefficient = Complex(parse_real(t), 0);
            expect(Tok::Star, "'*'");
        } else if (t.kind == Tok::LParen) {
            next();
            term.coefficient = parse_complex();
            expect(Tok::RParen, "')'");
            expect(Tok::Star, "'*'");
        }
        const Token &ket = peek();
        if (ket.kind != Tok::Ket) {
            fail(ErrorCode::BadProjectionExpr, "expected a ket like |01> but found '" + ket.text + "'", ket);
        }
        next();
        term.label = ket.text;
        term.coefficient *= sign;
        return term;
    }

    KetSum parse_ketsum() {
        KetSum sum;
        double sign = 1;
        if (peek().kind == Tok::Minus) {
            next();
            sign = -1;
        }
        sum.push_back(parse_kterm(sign));
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            sign = next().kind == Tok::Minus ? -1 : 1;
            sum.push_back(parse_kterm(sign));
        }
        return sum;
    }
};

}  // namespace

Program parse_program(std::string_view text) {
    return Parser(lex(text)).parse();
}

}  // namespace qassert
