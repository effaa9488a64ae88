#include "bigmcg/end_space.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "bigmcg/errors.hpp"

namespace bigmcg {

// ---------------------------------------------------------------- EndExpr

EndExpr EndExpr::pt(Mark m) {
    return EndExpr(std::make_shared<Node>(Node{Kind::Pt, m, {}}));
}

EndExpr EndExpr::omega(EndExpr child, Mark limit_mark) {
    return EndExpr(std::make_shared<Node>(
        Node{Kind::Omega, limit_mark, {std::move(child)}}));
}

EndExpr EndExpr::cantor(Mark m) {
    return EndExpr(std::make_shared<Node>(Node{Kind::Cantor, m, {}}));
}

EndExpr EndExpr::sum(std::vector<EndExpr> children) {
    if (children.empty())
        throw validity_error("sum of zero end-space expressions");
    std::vector<EndExpr> flat;
    for (EndExpr& c : children) {
        if (c.kind() == Kind::Sum) {
            for (const EndExpr& g : c.children()) flat.push_back(g);
        } else {
            flat.push_back(std::move(c));
        }
    }
    if (flat.size() == 1) return flat[0];
    return EndExpr(std::make_shared<Node>(
        Node{Kind::Sum, Mark::planar, std::move(flat)}));
}

bool EndExpr::operator==(const EndExpr& other) const {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    if (node_->kind != Kind::Sum && node_->mark != other.node_->mark)
        return false;
    if (node_->children.size() != other.node_->children.size()) return false;
    for (std::size_t i = 0; i < node_->children.size(); ++i)
        if (!(node_->children[i] == other.node_->children[i])) return false;
    return true;
}

bool EndExpr::operator<(const EndExpr& other) const {
    if (node_ == other.node_) return false;
    if (node_->kind != other.node_->kind)
        return static_cast<int>(node_->kind) < static_cast<int>(other.node_->kind);
    if (node_->kind != Kind::Sum && node_->mark != other.node_->mark)
        return node_->mark == Mark::planar;
    const auto& a = node_->children;
    const auto& b = other.node_->children;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

bool EndExpr::contains_nonplanar() const {
    if (node_->kind != Kind::Sum && node_->mark == Mark::nonplanar) return true;
    for (const EndExpr& c : node_->children)
        if (c.contains_nonplanar()) return true;
    return false;
}

bool EndExpr::contains_cantor() const {
    if (node_->kind == Kind::Cantor) return true;
    for (const EndExpr& c : node_->children)
        if (c.contains_cantor()) return true;
    return false;
}

bool EndExpr::contains_pt() const {
    if (node_->kind == Kind::Pt) return true;
    for (const EndExpr& c : node_->children)
        if (c.contains_pt()) return true;
    return false;
}

bool EndExpr::contains_omega() const {
    if (node_->kind == Kind::Omega) return true;
    for (const EndExpr& c : node_->children)
        if (c.contains_omega()) return true;
    return false;
}

bool EndExpr::uniformly_marked(Mark m) const {
    if (node_->kind != Kind::Sum && node_->mark != m) return false;
    for (const EndExpr& c : node_->children)
        if (!c.uniformly_marked(m)) return false;
    return true;
}

int EndExpr::depth() const {
    int d = 0;
    for (const EndExpr& c : node_->children) d = std::max(d, c.depth());
    return d + 1;
}

std::size_t EndExpr::node_count() const {
    std::size_t n = 1;
    for (const EndExpr& c : node_->children) n += c.node_count();
    return n;
}

std::string EndExpr::to_string() const {
    switch (node_->kind) {
        case Kind::Pt:
            return node_->mark == Mark::nonplanar ? "pt*" : "pt";
        case Kind::Cantor:
            return node_->mark == Mark::nonplanar ? "cantor*" : "cantor";
        case Kind::Omega: {
            std::string s = "omega(" + child().to_string() + ")";
            if (node_->mark == Mark::nonplanar) s += "*";
            return s;
        }
        case Kind::Sum: {
            std::string s;
            for (std::size_t i = 0; i < node_->children.size(); ++i) {
                if (i) s += " + ";
                s += node_->children[i].to_string();
            }
            return s;
        }
    }
    return "";
}

std::string to_string(Mark m) {
    return m == Mark::planar ? "planar" : "nonplanar";
}

std::string to_string(NamedSurface n) {
    switch (n) {
        case NamedSurface::loch_ness: return "loch-ness";
        case NamedSurface::jacobs_ladder: return "jacobs-ladder";
        case NamedSurface::flute: return "flute";
        case NamedSurface::cantor_tree: return "cantor-tree";
    }
    return "";
}

std::string CBCharacteristic::to_string() const {
    return "(" + alpha.to_string() + "," + std::to_string(n) + ")";
}

EndCount EndCount::operator+(const EndCount& o) const {
    if (kind == CountKind::cantor_many || o.kind == CountKind::cantor_many)
        return cantor();
    if (kind == CountKind::countably_many || o.kind == CountKind::countably_many)
        return countable();
    return finite(value + o.value);
}

std::string EndCount::to_string() const {
    switch (kind) {
        case CountKind::finite: return std::to_string(value);
        case CountKind::countably_many: return "countably-many";
        case CountKind::cantor_many: return "cantor-many";
    }
    return "";
}

// ----------------------------------------------------------------- parser

namespace {

struct Token {
    enum class Type { ident, number, symbol, end };
    Type type;
    std::string text;
    std::uint64_t number = 0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw syntax_error(msg, tok_.line, tok_.column);
    }

private:
    void advance() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
            ++pos_;
        }
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= src_.size()) {
            tok_.type = Token::Type::end;
            tok_.text = "<end>";
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_; ++col_;
            }
            tok_.type = Token::Type::ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            std::uint64_t v = 0;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                v = v * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
                ++pos_; ++col_;
            }
            tok_.type = Token::Type::number;
            tok_.text = src_.substr(start, pos_ - start);
            tok_.number = v;
            return;
        }
        tok_.type = Token::Type::symbol;
        tok_.text = std::string(1, c);
        ++pos_; ++col_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class ExprParser {
public:
    explicit ExprParser(Lexer& lex) : lex_(lex) {}

    EndExpr parse_expr(int depth = 0) {
        if (depth > 256) throw resource_error("end-space expression too deep");
        std::vector<EndExpr> terms;
        terms.push_back(parse_term(depth));
        while (lex_.peek().type == Token::Type::symbol &&
               lex_.peek().text == "+") {
            lex_.take();
            terms.push_back(parse_term(depth));
        }
        return EndExpr::sum(std::move(terms));
    }

private:
    EndExpr parse_term(int depth) {
        const Token& t = lex_.peek();
        if (t.type != Token::Type::ident)
            lex_.fail("expected 'pt', 'omega' or 'cantor', got '" + t.text + "'");
        if (t.text == "pt") {
            lex_.take();
            return EndExpr::pt(take_star() ? Mark::nonplanar : Mark::planar);
        }
        if (t.text == "cantor") {
            lex_.take();
            return EndExpr::cantor(take_star() ? Mark::nonplanar : Mark::planar);
        }
        if (t.text == "omega") {
            lex_.take();
            expect_symbol("(");
            EndExpr child = parse_expr(depth + 1);
            expect_symbol(")");
            Mark lm = take_star() ? Mark::nonplanar : Mark::planar;
            return EndExpr::omega(std::move(child), lm);
        }
        lex_.fail("unknown term '" + t.text + "'");
    }

    bool take_star() {
        if (lex_.peek().type == Token::Type::symbol && lex_.peek().text == "*") {
            lex_.take();
            return true;
        }
        return false;
    }

    void expect_symbol(const std::string& s) {
        const Token& t = lex_.peek();
        if (t.type != Token::Type::symbol || t.text != s)
            lex_.fail("expected '" + s + "', got '" + t.text + "'");
        lex_.take();
    }

    Lexer& lex_;
};

void expect_ident(Lexer& lex, const std::string& word) {
    const Token& t = lex.peek();
    if (t.type != Token::Type::ident || t.text != word)
        lex.fail("expected '" + word + "', got '" + t.text + "'");
    lex.take();
}

void expect_sym(Lexer& lex, const std::string& s) {
    const Token& t = lex.peek();
    if (t.type != Token::Type::symbol || t.text != s)
        lex.fail("expected '" + s + "', got '" + t.text + "'");
    lex.take();
}

void collect_violations(const EndExpr& e, const std::string& path,
                        std::vector<Violation>& out) {
    switch (e.kind()) {
        case EndExpr::Kind::Pt:
        case EndExpr::Kind::Cantor:
            return;
        case EndExpr::Kind::Omega:
            if (e.child().contains_nonplanar() &&
                e.limit_mark() == Mark::planar) {
                out.push_back({"E-infinity-closed", path,
                               "omega limit is planar but its child contains "
                               "a nonplanar end; the nonplanar set must be "
                               "closed"});
            }
            collect_violations(e.child(), path + "/w", out);
            return;
        case EndExpr::Kind::Sum: {
            if (e.children().size() < 2)
                out.push_back({"sum-arity", path, "sum has fewer than 2 summands"});
            for (std::size_t i = 0; i < e.children().size(); ++i) {
                if (e.children()[i].kind() == EndExpr::Kind::Sum)
                    out.push_back({"sum-flattened", path + "/" + std::to_string(i),
                                   "sum directly contains a sum"});
                collect_violations(e.children()[i], path + "/" + std::to_string(i),
                                   out);
            }
            return;
        }
    }
}

} // namespace

EndExpr parse_end_expr(const std::string& text) {
    Lexer lex(text);
    ExprParser p(lex);
    EndExpr e = p.parse_expr();
    if (lex.peek().type != Token::Type::end)
        lex.fail("unexpected trailing input '" + lex.peek().text + "'");
    std::vector<Violation> v;
    collect_violations(e, "", v);
    if (!v.empty())
        throw validity_error(v[0].invariant + " at '" + v[0].path + "': " +
                             v[0].detail);
    return e;
}

SurfaceSpec parse_surface(const std::string& text) {
    Lexer lex(text);
    expect_ident(lex, "genus");
    expect_sym(lex, "=");
    Genus genus;
    {
        const Token& t = lex.peek();
        if (t.type == Token::Type::ident && t.text == "inf") {
            genus = Genus::inf();
            lex.take();
        } else if (t.type == Token::Type::number) {
            genus = Genus::finite(t.number);
            lex.take();
        } else {
            lex.fail("expected 'inf' or a natural number, got '" + t.text + "'");
        }
    }
    expect_sym(lex, ";");
    expect_ident(lex, "ends");
    expect_sym(lex, "=");
    ExprParser p(lex);
    EndExpr ends = p.parse_expr();
    if (lex.peek().type != Token::Type::end)
        lex.fail("unexpected trailing input '" + lex.peek().text + "'");

    SurfaceSpec spec{genus, std::move(ends)};
    std::vector<Violation> v = validate(spec);
    if (!v.empty())
        throw validity_error(v[0].invariant + " at '" + v[0].path + "': " +
                             v[0].detail);
    return spec;
}

// --------------------------------------------------------------- validate

std::vector<Violation> validate(const SurfaceSpec& spec) {
    std::vector<Violation> out;
    collect_violations(spec.ends, "", out);
    bool nonplanar = spec.ends.contains_nonplanar();
    if (nonplanar && !spec.genus.infinite)
        out.push_back({"nonplanar-requires-infinite-genus", "",
                       "a nonplanar end exists but the genus is finite"});
    if (!nonplanar && spec.genus.infinite)
        out.push_back({"infinite-genus-requires-nonplanar-end", "",
                       "the genus is infinite but every end is planar"});
    return out;
}

bool is_infinite_type(const SurfaceSpec& spec) {
    return spec.genus.infinite || spec.ends.contains_omega() ||
           spec.ends.contains_cantor();
}

// --------------------------------------------------------- characteristic

std::optional<CBCharacteristic> characteristic(const EndExpr& expr) {
    switch (expr.kind()) {
        case EndExpr::Kind::Pt:
            return CBCharacteristic{Ordinal::zero(), 1};
        case EndExpr::Kind::Cantor:
            return std::nullopt;
        case EndExpr::Kind::Omega: {
            auto c = characteristic(expr.child());
            if (!c) return std::nullopt;
            return CBCharacteristic{c->alpha.successor(), 1};
        }
        case EndExpr::Kind::Sum: {
            std::optional<CBCharacteristic> best;
            for (const EndExpr& ch : expr.children()) {
                auto c = characteristic(ch);
                if (!c) return std::nullopt;
                if (!best || c->alpha > best->alpha) {
                    best = c;
                } else if (c->alpha == best->alpha) {
                    best->n += c->n;
                }
            }
            return best;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- normalize

namespace {

bool canonical_less(const EndExpr& a, const EndExpr& b) {
    auto ca = characteristic(a);
    auto cb = characteristic(b);
    if (ca.has_value() != cb.has_value()) return ca.has_value();
    if (ca && cb) {
        if (ca->alpha != cb->alpha) return ca->alpha < cb->alpha;
        if (ca->n != cb->n) return ca->n < cb->n;
    }
    return a.to_string() < b.to_string();
}

EndExpr normalize_rec(const EndExpr& e) {
    switch (e.kind()) {
        case EndExpr::Kind::Pt:
        case EndExpr::Kind::Cantor:
            return e;
        case EndExpr::Kind::Omega: {
            EndExpr c = normalize_rec(e.child());
            // omega of k identical summands is omega of one of them.
            if (c.kind() == EndExpr::Kind::Sum) {
                bool all_equal = true;
                for (const EndExpr& g : c.children())
                    if (!(g == c.children()[0])) { all_equal = false; break; }
                if (all_equal) c = c.children()[0];
            }
            Mark lm = e.limit_mark();
            // A uniformly marked expression without isolated ends denotes a
            // Cantor set of ends.
            if (!c.contains_pt() && c.uniformly_marked(lm))
                return EndExpr::cantor(lm);
            return EndExpr::omega(std::move(c), lm);
        }
        case EndExpr::Kind::Sum: {
            std::vector<EndExpr> kids;
            for (const EndExpr& ch : e.children()) {
                EndExpr n = normalize_rec(ch);
                if (n.kind() == EndExpr::Kind::Sum)
                    for (const EndExpr& g : n.children()) kids.push_back(g);
                else
                    kids.push_back(std::move(n));
            }
            bool changed = true;
            while (changed) {
                changed = false;
                // Two disjoint Cantor pieces with the same mark form one.
                for (std::size_t i = 0; i < kids.size() && !changed; ++i) {
                    if (kids[i].kind() != EndExpr::Kind::Cantor) continue;
                    for (std::size_t j = i + 1; j < kids.size(); ++j) {
                        if (kids[j] == kids[i]) {
                            kids.erase(kids.begin() + j);
                            changed = true;
                            break;
                        }
                    }
                }
                if (changed) continue;
                // A summand equal to the child of a sibling omega slides into
                // that omega's tail.
                for (std::size_t i = 0; i < kids.size() && !changed; ++i) {
                    if (kids[i].kind() != EndExpr::Kind::Omega) continue;
                    for (std::size_t j = 0; j < kids.size(); ++j) {
                        if (j != i && kids[j] == kids[i].child()) {
                            kids.erase(kids.begin() + j);
                            changed = true;
                            break;
                        }
                    }
                }
            }
            if (kids.size() == 1) return kids[0];
            std::sort(kids.begin(), kids.end(), canonical_less);
            return EndExpr::sum(std::move(kids));
        }
    }
    return e;
}

EndExpr rebuild_countable(const Ordinal& alpha, std::uint64_t n, Mark m) {
    EndExpr core = EndExpr::pt(m);
    for (std::uint64_t i = 0; i < alpha.natural_value(); ++i)
        core = EndExpr::omega(std::move(core), m);
    if (n == 1) return core;
    std::vector<EndExpr> copies(n, core);
    return EndExpr::sum(std::move(copies));
}

void collect_cantor_parts(const EndExpr& e, const std::string& path,
                          std::vector<std::pair<Mark, std::string>>& out) {
    switch (e.kind()) {
        case EndExpr::Kind::Pt:
            return;
        case EndExpr::Kind::Cantor:
            out.emplace_back(e.mark(), path);
            return;
        case EndExpr::Kind::Omega:
            collect_cantor_parts(e.child(), path + "/w", out);
            return;
        case EndExpr::Kind::Sum:
            for (std::size_t i = 0; i < e.children().size(); ++i)
                collect_cantor_parts(e.children()[i],
                                     path + "/" + std::to_string(i), out);
            return;
    }
}

} // namespace

CanonicalEndForm normalize(const EndExpr& expr) {
    EndExpr n = normalize_rec(expr);
    if (!n.contains_cantor()) {
        Mark m = n.contains_nonplanar() ? Mark::nonplanar : Mark::planar;
        if (n.uniformly_marked(m)) {
            auto c = characteristic(n);
            if (c && c->alpha.is_natural())
                n = rebuild_countable(c->alpha, c->n, m);
        }
    }
    CanonicalEndForm form{n, characteristic(n), {}};
    collect_cantor_parts(n, "", form.cantor_parts);
    std::sort(form.cantor_parts.begin(), form.cantor_parts.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    return form;
}

std::string CanonicalEndForm::to_record() const {
    std::string s = "characteristic=";
    s += characteristic ? characteristic->to_string() : "uncountable";
    s += "; cantor_parts=[";
    for (std::size_t i = 0; i < cantor_parts.size(); ++i) {
        if (i) s += ",";
        s += to_string(cantor_parts[i].first) + "@" + cantor_parts[i].second;
    }
    s += "]; form=" + normal_form.to_string();
    return s;
}

// ---------------------------------------------------------------- list_ends

namespace {

void list_ends_rec(const EndExpr& e, const std::string& path, bool under_omega,
                   std::vector<EndDescriptor>& out) {
    switch (e.kind()) {
        case EndExpr::Kind::Pt:
            out.push_back({path, EndKind::isolated, e.mark(), e,
                           under_omega ? EndCount::countable()
                                       : EndCount::finite(1)});
            return;
        case EndExpr::Kind::Cantor:
            out.push_back({path, EndKind::cantor_family, e.mark(), e,
                           EndCount::cantor()});
            return;
        case EndExpr::Kind::Omega:
            out.push_back({path, EndKind::limit, e.limit_mark(), e,
                           under_omega ? EndCount::countable()
                                       : EndCount::finite(1)});
            list_ends_rec(e.child(), path + "/w", true, out);
            return;
        case EndExpr::Kind::Sum:
            for (std::size_t i = 0; i < e.children().size(); ++i)
                list_ends_rec(e.children()[i], path + "/" + std::to_string(i),
                              under_omega, out);
            return;
    }
}

} // namespace

std::vector<EndDescriptor> list_ends(const EndExpr& expr) {
    std::vector<EndDescriptor> out;
    list_ends_rec(expr, "", false, out);
    return out;
}

// ------------------------------------------------- clopen decompositions

namespace {

constexpr std::size_t kDecompositionBudget = 20000;

std::string partition_key(const std::vector<EndExpr>& pieces) {
    std::vector<std::string> keys;
    keys.reserve(pieces.size());
    for (const EndExpr& p : pieces)
        keys.push_back(normalize(p).normal_form.to_string());
    std::sort(keys.begin(), keys.end());
    std::string s;
    for (const std::string& k : keys) s += k + "|";
    return s;
}

// All partitions of indices 0..n-1 into >= 2 nonempty blocks.
void index_partitions(std::size_t n,
                      std::vector<std::vector<std::vector<std::size_t>>>& out) {
    std::vector<int> block_of(n, 0);
    // Restricted growth strings.
    auto emit = [&]() {
        int blocks = *std::max_element(block_of.begin(), block_of.end()) + 1;
        if (blocks < 2) return;
        std::vector<std::vector<std::size_t>> part(blocks);
        for (std::size_t i = 0; i < n; ++i) part[block_of[i]].push_back(i);
        out.push_back(std::move(part));
    };
    // Iterate restricted growth strings in lexicographic order.
    while (true) {
        emit();
        // next string
        int i = static_cast<int>(n) - 1;
        for (; i >= 1; --i) {
            int maxPrefix = 0;
            for (int j = 0; j < i; ++j) maxPrefix = std::max(maxPrefix, block_of[j]);
            if (block_of[i] <= maxPrefix) { ++block_of[i]; break; }
            block_of[i] = 0;
        }
        if (i < 1) break;
        for (std::size_t j = i + 1; j < n; ++j) block_of[j] = 0;
    }
}

void decompose_rec(const EndExpr& e, int depth,
                   std::vector<std::vector<EndExpr>>& out,
                   std::set<std::string>& seen, std::size_t& budget);

void add_partition(std::vector<EndExpr> pieces, int depth,
                   std::vector<std::vector<EndExpr>>& out,
                   std::set<std::string>& seen, std::size_t& budget) {
    if (budget == 0)
        throw resource_error("clopen decomposition budget exceeded");
    --budget;
    std::string key = partition_key(pieces);
    if (!seen.insert(key).second) return;
    out.push_back(pieces);
    if (depth <= 1) return;
    // Refine one piece at a time.
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::vector<std::vector<EndExpr>> sub;
        std::set<std::string> sub_seen;
        decompose_rec(pieces[i], depth - 1, sub, sub_seen, budget);
        for (const auto& s : sub) {
            std::vector<EndExpr> refined;
            for (std::size_t j = 0; j < pieces.size(); ++j) {
                if (j == i)
                    refined.insert(refined.end(), s.begin(), s.end());
                else
                    refined.push_back(pieces[j]);
            }
            add_partition(std::move(refined), depth - 1, out, seen, budget);
        }
    }
}

void decompose_rec(const EndExpr& e, int depth,
                   std::vector<std::vector<EndExpr>>& out,
                   std::set<std::string>& seen, std::size_t& budget) {
    if (depth <= 0) return;
    switch (e.kind()) {
        case EndExpr::Kind::Pt:
            return;
        case EndExpr::Kind::Cantor:
            add_partition({e, e}, depth, out, seen, budget);
            return;
        case EndExpr::Kind::Omega: {
            for (int k = 1; k <= depth; ++k) {
                EndExpr prefix = k == 1
                    ? e.child()
                    : EndExpr::sum(std::vector<EndExpr>(k, e.child()));
                add_partition({prefix, e}, depth, out, seen, budget);
            }
            return;
        }
        case EndExpr::Kind::Sum: {
            std::vector<std::vector<std::vector<std::size_t>>> parts;
            index_partitions(e.children().size(), parts);
            for (const auto& part : parts) {
                std::vector<EndExpr> pieces;
                for (const auto& block : part) {
                    std::vector<EndExpr> group;
                    for (std::size_t idx : block) group.push_back(e.children()[idx]);
                    pieces.push_back(EndExpr::sum(std::move(group)));
                }
                add_partition(std::move(pieces), depth, out, seen, budget);
            }
            return;
        }
    }
}

} // namespace

std::vector<std::vector<EndExpr>> clopen_decompositions(const EndExpr& expr,
                                                        int depth) {
    if (depth < 1) throw precondition_error("decomposition depth must be >= 1");
    std::vector<std::vector<EndExpr>> out;
    std::set<std::string> seen;
    std::size_t budget = kDecompositionBudget;
    decompose_rec(expr, depth, out, seen, budget);
    return out;
}

// ------------------------------------------------------------ clopen_embeds

namespace {

constexpr std::size_t kEmbedBudget = 200000;

std::vector<EndExpr> terms_of(const EndExpr& e) {
    if (e.kind() == EndExpr::Kind::Sum) return e.children();
    return {e};
}

EndExpr sum_of(std::vector<EndExpr> terms) {
    if (terms.size() == 1) return terms[0];
    std::sort(terms.begin(), terms.end(), canonical_less);
    return EndExpr::sum(std::move(terms));
}

bool embeds_rec(const EndExpr& a, const EndExpr& b, std::size_t& budget) {
    if (budget == 0) throw resource_error("clopen embedding budget exceeded");
    --budget;
    if (a == b) return true;
    switch (b.kind()) {
        case EndExpr::Kind::Pt:
        case EndExpr::Kind::Cantor:
            return false;  // equality was the only option
        case EndExpr::Kind::Omega: {
            std::vector<EndExpr> ts = terms_of(a);
            // Route avoiding the limit end: finitely many copies of the child.
            bool all = true;
            for (const EndExpr& t : ts)
                if (!embeds_rec(t, b.child(), budget)) { all = false; break; }
            if (all) return true;
            // Route through the limit end: one summand is a full tail.
            if (a.kind() == EndExpr::Kind::Sum) {
                for (std::size_t i = 0; i < ts.size(); ++i) {
                    if (!(ts[i] == b)) continue;
                    bool rest = true;
                    for (std::size_t j = 0; j < ts.size() && rest; ++j)
                        if (j != i && !embeds_rec(ts[j], b.child(), budget))
                            rest = false;
                    if (rest) return true;
                }
            }
            return false;
        }
        case EndExpr::Kind::Sum: {
            std::vector<EndExpr> ts = terms_of(a);
            const std::vector<EndExpr>& targets = b.children();
            // Assign each term to one target summand; a target may receive
            // several terms.
            std::vector<std::vector<EndExpr>> groups(targets.size());
            std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
                if (i == ts.size()) {
                    for (std::size_t g = 0; g < groups.size(); ++g) {
                        if (groups[g].empty()) continue;
                        if (!embeds_rec(sum_of(groups[g]), targets[g], budget))
                            return false;
                    }
                    return true;
                }
                for (std::size_t g = 0; g < groups.size(); ++g) {
                    groups[g].push_back(ts[i]);
                    if (assign(i + 1)) return true;
                    groups[g].pop_back();
                }
                return false;
            };
            return assign(0);
        }
    }
    return false;
}

} // namespace

bool clopen_embeds(const EndExpr& small, const EndExpr& big) {
    EndExpr a = normalize(small).normal_form;
    EndExpr b = normalize(big).normal_form;
    std::size_t budget = kEmbedBudget;
    return embeds_rec(a, b, budget);
}

// ---------------------------------------------------------- self-similarity

SelfSimilarityResult is_self_similar_bounded(const EndExpr& expr, int depth) {
    EndExpr whole = normalize(expr).normal_form;
    for (const auto& pieces : clopen_decompositions(expr, depth)) {
        bool found = false;
        for (const EndExpr& p : pieces) {
            if (clopen_embeds(whole, p)) { found = true; break; }
        }
        if (!found) return SelfSimilarityResult{false, pieces};
    }
    return SelfSimilarityResult{true, {}};
}

// -------------------------------------------------------------- recognition

std::optional<NamedSurface> recognize_named(const SurfaceSpec& spec) {
    EndExpr n = normalize(spec.ends).normal_form;
    if (spec.genus.infinite) {
        if (n == EndExpr::pt(Mark::nonplanar)) return NamedSurface::loch_ness;
        if (n == EndExpr::sum({EndExpr::pt(Mark::nonplanar),
                               EndExpr::pt(Mark::nonplanar)}))
            return NamedSurface::jacobs_ladder;
        return std::nullopt;
    }
    if (spec.genus.value != 0) return std::nullopt;
    if (n == EndExpr::omega(EndExpr::pt(Mark::planar), Mark::planar))
        return NamedSurface::flute;
    if (n == EndExpr::cantor(Mark::planar)) return NamedSurface::cantor_tree;
    return std::nullopt;
}

} // namespace bigmcg
