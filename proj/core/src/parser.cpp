#include "grpkit/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "grpkit/error.hpp"

namespace grpkit {

namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int column;  // 1-based
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    Lexer(std::string_view text, int line, int column_offset)
        : text_(text), line_(line), offset_(column_offset) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < text_.size()) {
            const char c = text_[i];
            const int col = static_cast<int>(i) + 1 + offset_;
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
            } else if (is_digit(c)) {
                std::size_t j = i;
                while (j < text_.size() && is_digit(text_[j])) {
                    ++j;
                }
                out.push_back({Tok::Number, std::string(text_.substr(i, j - i)), col});
                i = j;
            } else if (is_name_start(c)) {
                std::size_t j = i;
                while (j < text_.size() && is_name_char(text_[j])) {
                    ++j;
                }
                out.push_back({Tok::Name, std::string(text_.substr(i, j - i)), col});
                i = j;
            } else {
                Tok kind{};
                switch (c) {
                    case '+': kind = Tok::Plus; break;
                    case '-': kind = Tok::Minus; break;
                    case '*': kind = Tok::Star; break;
                    case '/': kind = Tok::Slash; break;
                    case '^': kind = Tok::Caret; break;
                    case '(': kind = Tok::LParen; break;
                    case ')': kind = Tok::RParen; break;
                    default:
                        throw ParseError(std::string("unexpected character '") + c + "'", line_, col);
                }
                out.push_back({kind, std::string(1, c), col});
                ++i;
            }
        }
        out.push_back({Tok::End, "", static_cast<int>(text_.size()) + 1 + offset_});
        return out;
    }

private:
    std::string_view text_;
    int line_;
    int offset_;
};

class ExprParser {
public:
    ExprParser(std::vector<Token> tokens, const VarSpace& space, int line)
        : tokens_(std::move(tokens)), space_(space), line_(line) {}

    Polynomial parse() {
        if (peek().kind == Tok::End) {
            fail("empty expression", peek());
        }
        Polynomial p = expr();
        if (peek().kind != Tok::End) {
            const Token& t = peek();
            if (t.kind == Tok::Name || t.kind == Tok::Number || t.kind == Tok::LParen) {
                fail("implicit multiplication is not allowed; use '*'", t);
            }
            fail("unexpected '" + t.text + "'", t);
        }
        return p;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        throw ParseError(message, line_, at.column);
    }

    Polynomial expr() {
        Polynomial acc = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool minus = advance().kind == Tok::Minus;
            Polynomial rhs = term();
            if (minus) {
                acc -= rhs;
            } else {
                acc += rhs;
            }
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (peek().kind == Tok::Star) {
            advance();
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (peek().kind == Tok::Caret) {
            advance();
            const Token& e = peek();
            if (e.kind != Tok::Number) {
                fail("exponent must be a nonnegative integer literal", e);
            }
            advance();
            if (e.text.size() > 6) {
                fail("exponent too large", e);
            }
            b = b.pow(static_cast<unsigned>(std::stoul(e.text)));
        }
        return b;
    }

    Polynomial base() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                advance();
                std::string literal = t.text;
                if (peek().kind == Tok::Slash) {
                    advance();
                    const Token& d = peek();
                    if (d.kind != Tok::Number) {
                        fail("expected denominator after '/'", d);
                    }
                    advance();
                    literal += "/" + d.text;
                }
                try {
                    return Polynomial::constant(space_, Rational::parse(literal));
                } catch (const std::invalid_argument& e) {
                    fail(e.what(), t);
                }
            }
            case Tok::Name: {
                advance();
                auto idx = space_.index_of(t.text);
                if (!idx) {
                    fail("unknown variable '" + t.text + "'", t);
                }
                return Polynomial::variable(space_, *idx);
            }
            case Tok::LParen: {
                advance();
                Polynomial inner = expr();
                if (peek().kind != Tok::RParen) {
                    fail("expected ')'", peek());
                }
                advance();
                return inner;
            }
            case Tok::Minus:
                advance();
                return -factor();
            case Tok::End:
                fail("unexpected end of expression", t);
            default:
                fail("unexpected '" + t.text + "'", t);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const VarSpace& space_;
    int line_;
};

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !is_name_start(s.front())) {
        return false;
    }
    for (char c : s) {
        if (!is_name_char(c)) {
            return false;
        }
    }
    return true;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarSpace& space, int line, int column_offset) {
    ExprParser parser(Lexer(text, line, column_offset).run(), space, line);
    return parser.parse();
}

GermDocument parse_document(std::string_view text) {
    GermDocument doc;
    std::map<std::string, int> seen;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        const std::string line = trim(raw);
        const int lead = static_cast<int>(raw.find_first_not_of(" \t"));
        if (line.empty() || line.front() == '#') {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no, 1);
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        std::size_t value_pos = eq + 1;
        while (value_pos < line.size() && (line[value_pos] == ' ' || line[value_pos] == '\t')) {
            ++value_pos;
        }
        const int value_offset = lead + static_cast<int>(value_pos);
        if (!seen.emplace(key, line_no).second) {
            throw ParseError("duplicate key '" + key + "'", line_no, 1);
        }
        if (key == "n") {
            if (value.empty() || value.size() > 4 ||
                value.find_first_not_of("0123456789") != std::string::npos || std::stoi(value) < 1) {
                throw ParseError("n must be a positive integer", line_no, static_cast<int>(eq) + 2);
            }
            doc.n = std::stoi(value);
        } else if (key == "vars") {
            std::string name;
            std::stringstream ss(value);
            while (std::getline(ss, name, ',')) {
                doc.vars.push_back(trim(name));
            }
        } else if (key == "f1") {
            doc.f1_text = value;
            doc.f1_at = {line_no, value_offset};
        } else if (key == "f2") {
            doc.f2_text = value;
            doc.f2_at = {line_no, value_offset};
        } else if (key == "label") {
            doc.label = value;
        } else {
            throw ParseError("unknown key '" + key + "'", line_no, 1);
        }
        if (end == text.size()) {
            break;
        }
    }
    for (const char* required : {"n", "vars", "f1", "f2"}) {
        if (seen.find(required) == seen.end()) {
            throw ParseError(std::string("missing key '") + required + "'", line_no, 1);
        }
    }
    return doc;
}

MapGerm to_germ(const GermDocument& doc) {
    if (static_cast<int>(doc.vars.size()) != doc.n) {
        throw ArityMismatch("n = " + std::to_string(doc.n) + " but " + std::to_string(doc.vars.size()) +
                            " variables declared");
    }
    for (const auto& v : doc.vars) {
        if (!is_identifier(v)) {
            throw ParseError("invalid variable name '" + v + "'", 2, 1);
        }
        if (is_reserved_name(v)) {
            throw ParseError("variable name '" + v + "' is reserved", 2, 1);
        }
    }
    if (doc.vars.back() != "z") {
        throw ParseError("the last declared variable must be z", 2, 1);
    }
    const VarSpace space(doc.vars);
    Polynomial f1 = parse_polynomial(doc.f1_text, space, doc.f1_at.line, doc.f1_at.column_offset);
    Polynomial f2 = parse_polynomial(doc.f2_text, space, doc.f2_at.line, doc.f2_at.column_offset);
    return MapGerm(doc.vars, std::move(f1), std::move(f2), doc.label.value_or(""));
}

MapGerm parse_germ(std::string_view text) { return to_germ(parse_document(text)); }

std::string serialize(const Polynomial& p) { return to_string(p); }

std::string serialize(const MapGerm& germ) {
    std::ostringstream os;
    os << "n = " << germ.n << '\n';
    os << "vars = ";
    for (std::size_t i = 0; i < germ.source_vars.size(); ++i) {
        os << (i == 0 ? "" : ",") << germ.source_vars[i];
    }
    os << '\n';
    if (!germ.parameters.empty()) {
        os << "# parameters:";
        for (const auto& p : germ.parameters) {
            os << ' ' << p;
        }
        os << '\n';
    }
    os << "f1 = " << serialize(germ.f1) << '\n';
    os << "f2 = " << serialize(germ.f2) << '\n';
    if (!germ.label.empty()) {
        os << "label = " << germ.label << '\n';
    }
    return os.str();
}

}  // namespace grpkit
