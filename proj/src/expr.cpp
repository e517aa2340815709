#include "rmtlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "rmtlab/common.hpp"

namespace rmtlab {

struct ExprNode {
    enum class Kind { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Call } kind;
    double number = 0.0;
    std::string func;
    std::shared_ptr<const ExprNode> lhs, rhs;

    bool depends_on_x() const {
        if (kind == Kind::Var) return true;
        if (kind == Kind::Number) return false;
        return (lhs && lhs->depends_on_x()) || (rhs && rhs->depends_on_x());
    }
};

Jet eval_jet(const ExprNode& n, const Jet& x);

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(ExprNode::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("potential formula '" + s_ + "': " + what + " at position " +
                          std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr left = term();
        for (;;) {
            if (accept('+')) left = make(ExprNode::Kind::Add, left, term());
            else if (accept('-')) left = make(ExprNode::Kind::Sub, left, term());
            else return left;
        }
    }
    NodePtr term() {
        NodePtr left = unary();
        for (;;) {
            if (accept('*')) left = make(ExprNode::Kind::Mul, left, unary());
            else if (accept('/')) left = make(ExprNode::Kind::Div, left, unary());
            else return left;
        }
    }
    NodePtr unary() {
        if (accept('-')) return make(ExprNode::Kind::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(ExprNode::Kind::Pow, base, unary());
        return base;
    }
    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!accept(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(s_.substr(pos_), &used);
            pos_ += used;
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Number;
            n->number = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "x") return make(ExprNode::Kind::Var);
            if (name == "pi") {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Kind::Number;
                n->number = kPi;
                return n;
            }
            static const char* known[] = {"exp", "log", "sqrt", "sin", "cos", "abs"};
            bool ok = false;
            for (const char* k : known) ok |= (name == k);
            if (!ok) fail("unknown identifier '" + name + "'");
            if (!accept('(')) fail("expected '(' after " + name);
            NodePtr arg = expr();
            if (!accept(')')) fail("missing ')'");
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Call;
            n->func = name;
            n->lhs = arg;
            return n;
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

// Value of an x-free subtree.
double eval_number(const ExprNode& n) { return eval_jet(n, Jet(0.0)).value(); }

}  // namespace

Jet eval_jet(const ExprNode& n, const Jet& x) {
    using K = ExprNode::Kind;
    switch (n.kind) {
        case K::Number: return Jet(n.number);
        case K::Var: return x;
        case K::Add: return eval_jet(*n.lhs, x) + eval_jet(*n.rhs, x);
        case K::Sub: return eval_jet(*n.lhs, x) - eval_jet(*n.rhs, x);
        case K::Mul: return eval_jet(*n.lhs, x) * eval_jet(*n.rhs, x);
        case K::Div: return eval_jet(*n.lhs, x) / eval_jet(*n.rhs, x);
        case K::Neg: return -eval_jet(*n.lhs, x);
        case K::Pow: {
            const Jet base = eval_jet(*n.lhs, x);
            if (!n.rhs->depends_on_x()) {
                const double e = eval_number(*n.rhs);
                if (e == std::round(e) && std::abs(e) <= 64) return ipow(base, static_cast<int>(e));
                return exp(log(base) * e);
            }
            return exp(log(base) * eval_jet(*n.rhs, x));
        }
        case K::Call: {
            const Jet a = eval_jet(*n.lhs, x);
            if (n.func == "exp") return exp(a);
            if (n.func == "log") return log(a);
            if (n.func == "sqrt") return sqrt(a);
            if (n.func == "sin") return sin(a);
            if (n.func == "cos") return cos(a);
            return abs(a);
        }
    }
    return Jet();
}

Potential::Potential() : label_("0"), zero_(true) {
    callable_ = [](double) { return 0.0; };
}

Potential Potential::parse(const std::string& formula) {
    Potential p;
    p.root_ = Parser(formula).parse();
    p.label_ = formula;
    p.zero_ = !p.root_->depends_on_x() && eval_jet(*p.root_, Jet(0.0)).value() == 0.0;
    p.callable_ = nullptr;
    return p;
}

Potential Potential::from_callable(std::function<double(double)> f, std::string label) {
    Potential p;
    p.callable_ = std::move(f);
    p.label_ = std::move(label);
    p.zero_ = false;
    return p;
}

double Potential::operator()(double x) const {
    if (root_) return eval_jet(*root_, Jet(x)).value();
    return callable_(x);
}

Jet Potential::jet(double x) const {
    if (root_) return eval_jet(*root_, Jet::variable(x));
    if (zero_) return Jet(0.0);
    return finite_difference_jet(callable_, x);
}

Jet finite_difference_jet(const std::function<double(double)>& f, double x, double h) {
    // Five-point central stencils at steps h and h/2, combined by one
    // Richardson step so each derivative is fourth-order accurate.
    auto stencil = [&](double s, int k) {
        const double fm2 = f(x - 2 * s), fm1 = f(x - s), f0 = f(x), fp1 = f(x + s), fp2 = f(x + 2 * s);
        switch (k) {
            case 1: return (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * s);
            case 2: return (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * s * s);
            case 3: return (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * s * s * s);
            default: return (fp2 - 4 * fp1 + 6 * f0 - 4 * fm1 + fm2) / (s * s * s * s);
        }
    };
    Jet j(f(x));
    const double steps[5] = {0.0, h, h, 4 * h, 8 * h};
    const double richardson[5] = {0.0, 16.0, 16.0, 4.0, 4.0};
    double fact = 1.0;
    for (int k = 1; k <= 4; ++k) {
        fact *= k;
        const double coarse = stencil(steps[k], k), fine = stencil(0.5 * steps[k], k);
        const double d = (richardson[k] * fine - coarse) / (richardson[k] - 1.0);
        j.c[k] = d / fact;
    }
    return j;
}

}  // namespace rmtlab
