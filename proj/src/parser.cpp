#include "rtcheck/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "rtcheck/sup.hpp"

namespace rtcheck {

namespace {

// Requirement file grammar (comments start with '#'):
//
//   file        := 'props' ident+ requirement*
//   requirement := 'requirement' ident ('sup' (sup_block | sup_arrow)
//                                      | 'automaton' aut_block)
//   sup_block   := '{' (key '=' bexpr | key '=' window)* '}'
//                  with expression keys tse tc tee ase ac aee
//                  and window keys t l a (windows default to [0, 0])
//   sup_arrow   := bexpr '->' window? bexpr window?
//                  (p ->[l1,l2] q [a1,a2] means (p,p,p)[0,0] -l-> (q,q,q)[a])
//   aut_block   := '{' 'states' ident+ 'initial' ident 'accepting' ident*
//                  ('clocks' ident+)? trans* '}'
//   trans       := 'trans' ident '->' ident ('when' bexpr)? ('guard' atoms)?
//                  ('reset' ident (',' ident)*)?
//   atoms       := atom ('&' atom)*          atom := ident cmp number
//   bexpr       := or;  or := and (('|'|'||') and)*;
//   and         := unary (('&'|'&&') unary)*;  unary := '!' unary | primary
//   primary     := 'true' | 'false' | ident | '(' or ')'
//   window      := '[' number ',' number ']'

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    long value = 0;
    int line = 1, column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else {
                break;
            }
        }
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= text_.size()) {
            tok_ = {Tok::End, "", 0, line_, col_};
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_.kind = Tok::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            col_ += static_cast<int>(tok_.text.size());
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            tok_.kind = Tok::Number;
            tok_.text = text_.substr(start, pos_ - start);
            tok_.value = std::stol(tok_.text);
            col_ += static_cast<int>(tok_.text.size());
            return;
        }
        // Multi-character punctuation first.
        static const char* two[] = {"->", "<=", ">=", "==", "&&", "||"};
        for (const char* op : two) {
            if (text_.compare(pos_, 2, op) == 0) {
                tok_ = {Tok::Punct, op, 0, line_, col_};
                pos_ += 2;
                col_ += 2;
                return;
            }
        }
        tok_ = {Tok::Punct, std::string(1, c), 0, line_, col_};
        ++pos_;
        ++col_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& text, const LoadOptions& opts) : lex_(text), opts_(opts) {}

    RequirementSet parse() {
        expect_ident("props");
        while (lex_.peek().kind == Tok::Ident && lex_.peek().text != "requirement") {
            Token t = lex_.take();
            if (prop_ids_.count(t.text))
                throw ParseError("duplicate proposition '" + t.text + "'", t.line, t.column);
            if (static_cast<int>(set_.props.size()) >= kMaxProps)
                throw ParseError("too many propositions (limit " + std::to_string(kMaxProps) +
                                     ")",
                                 t.line, t.column);
            prop_ids_[t.text] = static_cast<int>(set_.props.size());
            set_.props.push_back(t.text);
        }
        if (set_.props.empty())
            throw ParseError("expected at least one proposition after 'props'", lex_.peek().line,
                             lex_.peek().column);

        while (lex_.peek().kind != Tok::End) parse_requirement();
        if (set_.requirements.empty())
            throw ParseError("file declares no requirements", lex_.peek().line,
                             lex_.peek().column);
        return std::move(set_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, lex_.peek().line, lex_.peek().column);
    }

    Token expect_ident(const std::string& word) {
        Token t = lex_.take();
        if (t.kind != Tok::Ident || t.text != word)
            throw ParseError("expected '" + word + "', got '" + t.text + "'", t.line, t.column);
        return t;
    }
    Token expect_punct(const std::string& p) {
        Token t = lex_.take();
        if (t.kind != Tok::Punct || t.text != p)
            throw ParseError("expected '" + p + "', got '" + t.text + "'", t.line, t.column);
        return t;
    }
    Token expect_name() {
        Token t = lex_.take();
        if (t.kind != Tok::Ident)
            throw ParseError("expected an identifier, got '" + t.text + "'", t.line, t.column);
        return t;
    }
    bool accept_punct(const std::string& p) {
        if (lex_.peek().kind == Tok::Punct && lex_.peek().text == p) {
            lex_.take();
            return true;
        }
        return false;
    }
    bool peek_ident(const std::string& word) const {
        return lex_.peek().kind == Tok::Ident && lex_.peek().text == word;
    }

    int prop_id(const Token& t) {
        auto it = prop_ids_.find(t.text);
        if (it == prop_ids_.end())
            throw ParseError("undeclared proposition '" + t.text + "'", t.line, t.column);
        return it->second;
    }

    // bexpr
    BoolExpr parse_or() {
        BoolExpr e = parse_and();
        while (accept_punct("|") || accept_punct("||")) e = std::move(e) || parse_and();
        return e;
    }
    BoolExpr parse_and() {
        BoolExpr e = parse_unary();
        while (accept_punct("&") || accept_punct("&&")) e = std::move(e) && parse_unary();
        return e;
    }
    BoolExpr parse_unary() {
        if (accept_punct("!")) return !parse_unary();
        if (accept_punct("(")) {
            BoolExpr e = parse_or();
            expect_punct(")");
            return e;
        }
        Token t = lex_.take();
        if (t.kind != Tok::Ident)
            throw ParseError("expected a proposition, got '" + t.text + "'", t.line, t.column);
        if (t.text == "true") return BoolExpr::constant(true);
        if (t.text == "false") return BoolExpr::constant(false);
        return BoolExpr::var(prop_id(t));
    }

    std::pair<int, int> parse_window() {
        expect_punct("[");
        Token lo = lex_.take();
        if (lo.kind != Tok::Number) throw ParseError("expected a number", lo.line, lo.column);
        expect_punct(",");
        Token hi = lex_.take();
        if (hi.kind != Tok::Number) throw ParseError("expected a number", hi.line, hi.column);
        expect_punct("]");
        if (lo.value > hi.value)
            throw ParseError("window lower bound exceeds upper bound", lo.line, lo.column);
        return {static_cast<int>(lo.value), static_cast<int>(hi.value)};
    }

    void parse_requirement() {
        expect_ident("requirement");
        Token name = expect_name();
        if (set_.find(name.text) >= 0)
            throw ParseError("duplicate requirement name '" + name.text + "'", name.line,
                             name.column);
        Token kind = expect_name();
        Requirement req;
        req.name = name.text;
        if (kind.text == "sup") {
            req.sup = parse_sup();
            req.automaton = compile_sup(*req.sup, set_.props);
        } else if (kind.text == "automaton") {
            req.automaton = parse_automaton(name.text);
        } else {
            throw ParseError("expected 'sup' or 'automaton', got '" + kind.text + "'", kind.line,
                             kind.column);
        }
        // Clock sets of distinct requirements must be disjoint for products.
        for (auto& c : req.automaton.clock_names) c = req.name + "." + c;
        set_.requirements.push_back(std::move(req));
    }

    SupRequirement parse_sup() {
        SupRequirement r;
        if (accept_punct("{")) {
            std::map<std::string, bool> seen;
            while (!accept_punct("}")) {
                Token key = expect_name();
                expect_punct("=");
                if (seen[key.text])
                    throw ParseError("duplicate key '" + key.text + "'", key.line, key.column);
                seen[key.text] = true;
                if (key.text == "t" || key.text == "l" || key.text == "a") {
                    auto [lo, hi] = parse_window();
                    if (key.text == "t") r.tmin = lo, r.tmax = hi;
                    if (key.text == "l") r.lmin = lo, r.lmax = hi;
                    if (key.text == "a") r.amin = lo, r.amax = hi;
                } else if (key.text == "tse") {
                    r.tse = parse_or();
                } else if (key.text == "tc") {
                    r.tc = parse_or();
                } else if (key.text == "tee") {
                    r.tee = parse_or();
                } else if (key.text == "ase") {
                    r.ase = parse_or();
                } else if (key.text == "ac") {
                    r.ac = parse_or();
                } else if (key.text == "aee") {
                    r.aee = parse_or();
                } else {
                    throw ParseError("unknown sup key '" + key.text + "'", key.line, key.column);
                }
            }
            for (const char* key : {"tse", "tc", "tee", "ase", "ac", "aee"})
                if (!seen[key]) fail(std::string("sup block is missing key '") + key + "'");
        } else {
            // Arrow shorthand: p ->[lmin,lmax] q [amin,amax], both windows optional.
            BoolExpr trigger = parse_or();
            expect_punct("->");
            if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "[") {
                auto [lo, hi] = parse_window();
                r.lmin = lo;
                r.lmax = hi;
            }
            BoolExpr action = parse_or();
            if (lex_.peek().kind == Tok::Punct && lex_.peek().text == "[") {
                auto [lo, hi] = parse_window();
                r.amin = lo;
                r.amax = hi;
            }
            r.tse = r.tc = r.tee = trigger;
            r.ase = r.ac = r.aee = action;
        }
        return r;
    }

    TimedAutomaton parse_automaton(const std::string& req_name) {
        expect_punct("{");
        TimedAutomaton ta;
        ta.prop_names = set_.props;
        std::map<std::string, int> state_ids;
        std::map<std::string, int> clock_ids;

        expect_ident("states");
        while (lex_.peek().kind == Tok::Ident && lex_.peek().text != "initial") {
            Token t = lex_.take();
            if (state_ids.count(t.text))
                throw ParseError("duplicate state '" + t.text + "'", t.line, t.column);
            state_ids[t.text] = ta.num_states();
            ta.state_names.push_back(t.text);
        }
        if (ta.state_names.empty()) fail("automaton declares no states");

        auto state = [&](const Token& t) {
            auto it = state_ids.find(t.text);
            if (it == state_ids.end())
                throw ParseError("unknown state '" + t.text + "'", t.line, t.column);
            return it->second;
        };

        expect_ident("initial");
        ta.initial.push_back(state(expect_name()));
        if (lex_.peek().kind == Tok::Ident && !peek_ident("accepting")) {
            Token t = lex_.peek();
            throw ParseError("requirement automata must have exactly one initial state", t.line,
                             t.column);
        }

        ta.accepting.assign(ta.num_states(), false);
        expect_ident("accepting");
        while (lex_.peek().kind == Tok::Ident && lex_.peek().text != "clocks" &&
               lex_.peek().text != "trans")
            ta.accepting[state(lex_.take())] = true;

        if (peek_ident("clocks")) {
            lex_.take();
            while (lex_.peek().kind == Tok::Ident && lex_.peek().text != "trans") {
                Token t = lex_.take();
                if (clock_ids.count(t.text))
                    throw ParseError("duplicate clock '" + t.text + "'", t.line, t.column);
                clock_ids[t.text] = ta.num_clocks();
                ta.clock_names.push_back(t.text);
            }
        }

        while (peek_ident("trans")) {
            lex_.take();
            Transition tr;
            tr.src = state(expect_name());
            expect_punct("->");
            tr.tgt = state(expect_name());
            tr.when = BoolExpr::constant(true);
            if (peek_ident("when")) {
                lex_.take();
                tr.when = parse_or();
            }
            if (peek_ident("guard")) {
                lex_.take();
                do {
                    Token c = expect_name();
                    auto it = clock_ids.find(c.text);
                    if (it == clock_ids.end())
                        throw ParseError("unknown clock '" + c.text + "'", c.line, c.column);
                    Token op = lex_.take();
                    CmpOp cmp;
                    if (op.text == "<")
                        cmp = CmpOp::Lt;
                    else if (op.text == "<=")
                        cmp = CmpOp::Le;
                    else if (op.text == "==" || op.text == "=")
                        cmp = CmpOp::Eq;
                    else if (op.text == ">=")
                        cmp = CmpOp::Ge;
                    else if (op.text == ">")
                        cmp = CmpOp::Gt;
                    else
                        throw ParseError("expected a comparison operator, got '" + op.text + "'",
                                         op.line, op.column);
                    Token bound = lex_.take();
                    if (bound.kind != Tok::Number)
                        throw ParseError("expected a nonnegative bound", bound.line, bound.column);
                    tr.guard.atoms.push_back(
                        {it->second, cmp, static_cast<int>(bound.value)});
                } while (accept_punct("&"));
            }
            if (peek_ident("reset")) {
                lex_.take();
                do {
                    Token c = expect_name();
                    auto it = clock_ids.find(c.text);
                    if (it == clock_ids.end())
                        throw ParseError("unknown clock '" + c.text + "'", c.line, c.column);
                    tr.resets.push_back(it->second);
                } while (accept_punct(","));
            }
            ta.transitions.push_back(std::move(tr));
        }
        expect_punct("}");
        ta.finalize();

        auto det = validate_deterministic(ta);
        if (!det.empty()) {
            std::string msg = "requirement '" + req_name + "' is nondeterministic:";
            for (const auto& v : det) msg += "\n  " + v.message;
            throw StructuralError(msg);
        }
        ta = complete(ta, opts_.completion);
        auto comp = validate_complete(ta);
        if (!comp.empty()) {
            std::string msg = "requirement '" + req_name + "' could not be completed:";
            for (const auto& v : comp) msg += "\n  " + v.message;
            throw StructuralError(msg);
        }
        return ta;
    }

    Lexer lex_;
    LoadOptions opts_;
    RequirementSet set_;
    std::map<std::string, int> prop_ids_;
};

}  // namespace

RequirementSet parse_requirements_text(const std::string& text, const LoadOptions& opts) {
    Parser p(text, opts);
    return p.parse();
}

RequirementSet parse_requirements(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open requirement file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_requirements_text(buf.str(), opts);
}

}  // namespace rtcheck
