#include <caspr/parser.hpp>

#include <caspr/validate.hpp>

#include <cctype>
#include <charconv>
#include <map>

namespace caspr {

std::string to_string(const SourceSpan& s) {
    return s.file + ":" + std::to_string(s.line) + ":" + std::to_string(s.column);
}

namespace {

enum class Tok { Ident, Variable, Integer, Punct, Directive, End };

struct Token {
    Tok         kind;
    std::string text;
    SourceSpan  span;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string file, bool directives)
        : text_(text), file_(std::move(file)), directives_(directives) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments(out);
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "", here()});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    SourceSpan here() const { return {file_, line_, col_}; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            }
            else {
                ++col_;
            }
            ++pos_;
        }
    }

    char peek(std::size_t k = 0) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

    void skip_space_and_comments(std::vector<Token>& out) {
        while (pos_ < text_.size()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            }
            else if (c == '%' && col_ == 1 && peek(1) == '@' && directives_) {
                auto span  = here();
                auto start = pos_;
                while (pos_ < text_.size() && peek() != '\n') {
                    advance();
                }
                std::string line(text_.substr(start, pos_ - start));
                while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
                    line.pop_back();
                }
                out.push_back({Tok::Directive, line, span});
            }
            else if (c == '%' && peek(1) == '*') {
                auto span = here();
                advance(2);
                while (pos_ < text_.size() && !(peek() == '*' && peek(1) == '%')) {
                    advance();
                }
                if (pos_ >= text_.size()) {
                    throw ParseError(span, "unterminated block comment");
                }
                advance(2);
            }
            else if (c == '%') {
                while (pos_ < text_.size() && peek() != '\n') {
                    advance();
                }
            }
            else {
                return;
            }
        }
    }

    Token next() {
        auto span = here();
        char c    = peek();
        auto take = [&](Tok kind, std::size_t n) {
            Token t{kind, std::string(text_.substr(pos_, n)), span};
            advance(n);
            return t;
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t n = 0;
            while (std::isdigit(static_cast<unsigned char>(peek(n)))) {
                ++n;
            }
            return take(Tok::Integer, n);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t n = 0;
            while (std::isalnum(static_cast<unsigned char>(peek(n))) || peek(n) == '_' || peek(n) == '\'') {
                ++n;
            }
            bool lower = std::islower(static_cast<unsigned char>(c)) != 0;
            return take(lower ? Tok::Ident : Tok::Variable, n);
        }
        if (c == '#') {
            std::size_t n = 1;
            while (std::isalpha(static_cast<unsigned char>(peek(n)))) {
                ++n;
            }
            return take(Tok::Punct, n);
        }
        for (std::string_view p : {":-", ":~", "!=", "<=", ">=", "<>"}) {
            if (text_.substr(pos_).starts_with(p)) {
                return take(Tok::Punct, p.size());
            }
        }
        if (std::string_view("().,;:{}[]@=<>-").find(c) != std::string_view::npos) {
            return take(Tok::Punct, 1);
        }
        throw ParseError(span, std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::string      file_;
    bool             directives_;
    std::size_t      pos_{0};
    int              line_{1};
    int              col_{1};
};

std::optional<CmpOp> as_cmp(const Token& t) {
    if (t.kind != Tok::Punct) {
        return std::nullopt;
    }
    static const std::map<std::string, CmpOp, std::less<>> ops{
        {"=", CmpOp::Eq}, {"!=", CmpOp::Ne}, {"<>", CmpOp::Ne}, {"<", CmpOp::Lt},
        {"<=", CmpOp::Le}, {">", CmpOp::Gt}, {">=", CmpOp::Ge},
    };
    auto it = ops.find(t.text);
    return it == ops.end() ? std::nullopt : std::optional(it->second);
}

enum class StatementKind { Rule, Weak, Choice };

class Parser {
public:
    Parser(std::vector<Token> toks, bool allow_reserved) : toks_(std::move(toks)), allow_reserved_(allow_reserved) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool         at_end() const { return peek().kind == Tok::End; }
    bool         at_directive() const { return peek().kind == Tok::Directive; }
    Token        take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool is(std::string_view punct, std::size_t k = 0) const {
        return peek(k).kind == Tok::Punct && peek(k).text == punct;
    }

    void expect(std::string_view punct) {
        if (!is(punct)) {
            fail("expected '" + std::string(punct) + "'");
        }
        take();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        throw ParseError(t.span, msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
    }

    // One statement appended to `out`; returns its kind.
    StatementKind statement(Program& out) {
        auto span = peek().span;
        if (is(":-")) {
            take();
            Rule r = Rule::constraint(body_until_dot());
            expect(".");
            check_safe(r, span);
            out.add(std::move(r));
            return StatementKind::Rule;
        }
        if (is(":~")) {
            take();
            WeakConstraint w;
            w.body = body_until_dot();
            expect(".");
            for (const auto& l : w.body) {
                if (std::holds_alternative<Aggregate>(l.content)) {
                    throw ParseError(span, "aggregates are not supported in weak constraint bodies");
                }
            }
            expect("[");
            w.weight = term();
            expect("@");
            auto level = term();
            if (!level.is_integer()) {
                throw ParseError(span, "weak constraint level must be an integer constant");
            }
            w.level = level.value;
            while (is(",")) {
                take();
                w.tuple.push_back(term());
            }
            expect("]");
            if (auto v = unsafe_variable(w)) {
                throw SafetyError(span, *v);
            }
            out.add(std::move(w));
            return StatementKind::Weak;
        }
        if (is("{")) {
            take();
            std::vector<Atom> heads;
            if (!is("}")) {
                heads.push_back(atom());
                while (is(";")) {
                    take();
                    heads.push_back(atom());
                }
            }
            expect("}");
            Body body;
            if (is(":-")) {
                take();
                body = body_until_dot();
            }
            expect(".");
            for (const auto& a : heads) {
                Atom comp("caspr_n_" + a.predicate, a.args);
                Rule pos{a, body};
                Rule neg{comp, body};
                pos.body.insert(pos.body.begin(), Literal::neg(comp));
                neg.body.insert(neg.body.begin(), Literal::neg(a));
                check_safe(pos, span);
                out.add(std::move(pos));
                out.add(std::move(neg));
            }
            return StatementKind::Choice;
        }
        if (peek().kind != Tok::Ident) {
            fail("expected a statement");
        }
        Rule r{atom(), {}};
        if (is(":-")) {
            take();
            r.body = body_until_dot();
        }
        expect(".");
        check_safe(r, span);
        out.add(std::move(r));
        return StatementKind::Rule;
    }

    Interpretation ground_atoms() {
        Interpretation out;
        while (!at_end()) {
            auto span = peek().span;
            Atom a    = atom();
            if (!a.is_ground()) {
                throw ParseError(span, "expected a ground atom");
            }
            out.insert(std::move(a));
        }
        return out;
    }

private:
    void check_safe(const Rule& r, const SourceSpan& span) const {
        if (auto v = unsafe_variable(r)) {
            throw SafetyError(span, *v);
        }
    }

    Term term() {
        const auto& t = peek();
        if (is("-") && peek(1).kind == Tok::Integer) {
            take();
            return Term::integer(-integer(take()));
        }
        switch (t.kind) {
            case Tok::Integer : return Term::integer(integer(take()));
            case Tok::Ident   : return Term::symbol(take().text);
            case Tok::Variable: return Term::variable(take().text);
            default           : fail("expected a term");
        }
    }

    static std::int64_t integer(const Token& t) {
        std::int64_t v{};
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{}) {
            throw ParseError(t.span, "integer out of range");
        }
        return v;
    }

    Atom atom() {
        if (peek().kind != Tok::Ident) {
            fail("expected an atom");
        }
        auto tok = take();
        if (!allow_reserved_ && is_reserved(tok.text)) {
            throw ParseError(tok.span, "predicate " + tok.text + " uses the reserved prefix caspr_");
        }
        Atom a(tok.text);
        if (is("(")) {
            take();
            a.args.push_back(term());
            while (is(",")) {
                take();
                a.args.push_back(term());
            }
            expect(")");
        }
        return a;
    }

    Body body_until_dot() {
        Body b;
        if (is(".")) {
            return b;
        }
        b.push_back(literal());
        while (is(",")) {
            take();
            b.push_back(literal());
        }
        return b;
    }

    Aggregate aggregate_tail() {
        Aggregate agg;
        auto      fn = take();
        if (fn.text == "#sum") {
            agg.fn = AggregateFn::Sum;
        }
        else if (fn.text == "#count") {
            agg.fn = AggregateFn::Count;
        }
        else {
            throw ParseError(fn.span, "unsupported aggregate " + fn.text);
        }
        expect("{");
        while (!is("}")) {
            AggregateElement e;
            e.terms.push_back(term());
            while (is(",")) {
                take();
                e.terms.push_back(term());
            }
            if (is(":")) {
                take();
                e.condition.push_back(literal());
                while (is(",")) {
                    take();
                    e.condition.push_back(literal());
                }
            }
            agg.elements.push_back(std::move(e));
            if (!is(";")) {
                break;
            }
            take();
        }
        expect("}");
        return agg;
    }

    Literal literal() {
        bool negated = false;
        if (peek().kind == Tok::Ident && peek().text == "not") {
            take();
            negated = true;
        }
        if (peek().kind == Tok::Punct && peek().text.starts_with("#")) {
            Aggregate agg = aggregate_tail();
            auto      op  = as_cmp(peek());
            if (!op) {
                fail("expected a comparison after aggregate");
            }
            take();
            agg.op    = *op;
            agg.guard = term();
            return Literal{std::move(agg), negated};
        }
        if (peek().kind == Tok::Ident && !as_cmp(peek(1))) {
            Atom a = atom();
            return Literal{std::move(a), negated};
        }
        Term lhs = term();
        auto op  = as_cmp(peek());
        if (!op) {
            fail("expected a comparison operator");
        }
        take();
        if (peek().kind == Tok::Punct && peek().text.starts_with("#")) {
            Aggregate agg = aggregate_tail();
            agg.op        = flip(*op);
            agg.guard     = lhs;
            return Literal{std::move(agg), negated};
        }
        if (negated) {
            fail("negated comparisons are not supported");
        }
        return Literal::cmp(std::move(lhs), *op, term());
    }

    std::vector<Token> toks_;
    std::size_t        pos_{0};
    bool               allow_reserved_;
};

} // namespace

Program parse_program(std::string_view text, const ParseOptions& opts) {
    Parser  p(Lexer(text, opts.file, false).run(), opts.allow_reserved);
    Program out;
    while (!p.at_end()) {
        p.statement(out);
    }
    return out;
}

Program parse_program(std::string_view text, std::string_view file) {
    return parse_program(text, ParseOptions{std::string(file), false});
}

QuantifiedProgram parse_quantified(std::string_view text, std::string_view file) {
    Parser            p(Lexer(text, std::string(file), true).run(), false);
    QuantifiedProgram qp;
    // Sections in order: q1, q2, constraint, global.
    std::map<std::string, SourceSpan> section_span;
    int                               stage = 0;
    if (!p.at_directive()) {
        throw SectionError(p.peek().span, "expected %@exists or %@forall before the first statement");
    }
    while (!p.at_end()) {
        auto dir = p.take();
        int  next_stage;
        if (dir.text == "%@exists" || dir.text == "%@forall") {
            if (stage >= 2) {
                throw SectionError(dir.span, "a third quantifier section is not allowed");
            }
            next_stage = stage + 1;
        }
        else if (dir.text == "%@constraint") {
            if (stage != 2) {
                throw SectionError(dir.span, stage < 2 ? "%@constraint before both quantifier sections"
                                                       : "duplicate or misplaced %@constraint");
            }
            next_stage = 3;
        }
        else if (dir.text == "%@global") {
            if (stage < 2 || stage == 4) {
                throw SectionError(dir.span, stage < 2 ? "%@global before both quantifier sections" : "duplicate %@global");
            }
            next_stage = 4;
        }
        else {
            throw SectionError(dir.span, "unknown directive " + dir.text);
        }
        auto q = dir.text == "%@exists" ? Quantifier::Exists : Quantifier::Forall;
        Program* target = nullptr;
        Program  global;
        switch (next_stage) {
            case 1:
                qp.q1  = q;
                target = &qp.p1;
                section_span["P1"] = dir.span;
                break;
            case 2:
                qp.q2  = q;
                target = &qp.p2;
                section_span["P2"] = dir.span;
                break;
            case 3:
                target = &qp.c;
                section_span["C"] = dir.span;
                break;
            default:
                target = &global;
                section_span["C^w"] = dir.span;
                break;
        }
        stage = next_stage;
        while (!p.at_end() && !p.at_directive()) {
            auto span = p.peek().span;
            auto kind = p.statement(*target);
            if (next_stage == 4 && kind != StatementKind::Weak) {
                throw ParseError(span, "the global section admits weak constraints only");
            }
        }
        if (next_stage == 4) {
            qp.cw = std::move(global.weaks);
        }
    }
    if (stage < 2) {
        throw SectionError(p.peek().span, "expected both %@exists/%@forall sections");
    }
    for (const auto& d : validate(qp)) {
        if (d.severity == Diagnostic::Severity::Error) {
            auto section = d.where.substr(0, d.where.find(' '));
            if (section == "P1/P2") {
                section = "P2";
            }
            auto it = section_span.find(section);
            throw ParseError(it != section_span.end() ? it->second : SourceSpan{std::string(file), 1, 1}, to_string(d));
        }
    }
    return qp;
}

Interpretation parse_atoms(std::string_view text) {
    Parser p(Lexer(text, "<model>", false).run(), true);
    return p.ground_atoms();
}

} // namespace caspr
