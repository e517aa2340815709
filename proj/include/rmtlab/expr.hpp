#pragma once

#include <functional>
#include <memory>
#include <string>

#include "rmtlab/jet.hpp"

namespace rmtlab {

struct ExprNode;

// A real function of one variable. Built either from a formula such as
// "x^4/10" (then derivatives are exact through Taylor jets) or from an opaque
// callable (derivatives fall back to central differences).
class Potential {
public:
    Potential();  // V = 0
    static Potential parse(const std::string& formula);
    static Potential from_callable(std::function<double(double)> f, std::string label = "callable");

    double operator()(double x) const;
    // Value and derivatives up to order 4 at x.
    Jet jet(double x) const;

    bool has_exact_derivatives() const { return static_cast<bool>(root_); }
    bool is_zero() const { return zero_; }
    const std::string& label() const { return label_; }

private:
    std::shared_ptr<const ExprNode> root_;
    std::function<double(double)> callable_;
    std::string label_;
    bool zero_ = false;
};

// Central-difference jet of an arbitrary smooth function (orders 0..4).
Jet finite_difference_jet(const std::function<double(double)>& f, double x, double h = 2e-3);

}  // namespace rmtlab
