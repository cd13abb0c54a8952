#include "prp/control.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace prp {

std::string family_name(ControlFamily f) {
    switch (f) {
        case ControlFamily::AllOne: return "all_one";
        case ControlFamily::Indicator: return "indicator";
        case ControlFamily::Logistic: return "logistic";
        case ControlFamily::Constant: return "constant";
        case ControlFamily::Table: return "table";
        case ControlFamily::SquareRatio: return "square_ratio";
    }
    return "?";
}

struct ControlFunction::Impl {
    ControlFamily family = ControlFamily::AllOne;
    long kappa = 0;                  // indicator/logistic
    Rational p = 1;                  // constant
    std::vector<Rational> values;    // table
    Rational tail = 0;               // table
    long a = 0, b = 0;               // square_ratio
    Rational scale = 1;

    // lazily extended prefix-product caches
    mutable std::mutex mu;
    mutable std::vector<double> prod;
    mutable std::vector<Rational> prod_exact;

    Rational exact_at(long i) const {
        switch (family) {
            case ControlFamily::AllOne:
                return 1;
            case ControlFamily::Indicator:
                return i < kappa ? 1 : 0;
            case ControlFamily::Logistic:
                return i >= kappa ? Rational(0) : Rational(kappa - i, kappa);
            case ControlFamily::Constant:
                return i == 0 ? Rational(1) : p;
            case ControlFamily::Table:
                return i < static_cast<long>(values.size()) ? values[i] : tail;
            case ControlFamily::SquareRatio: {
                Rational num(i + a), den(i + b);
                return scale * num * num / (den * den);
            }
        }
        return 0;
    }
};

ControlFunction::ControlFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
ControlFunction::ControlFunction() : ControlFunction(all_one()) {}

ControlFunction ControlFunction::all_one() {
    auto impl = std::make_shared<Impl>();
    impl->family = ControlFamily::AllOne;
    return ControlFunction(std::move(impl));
}

ControlFunction ControlFunction::indicator(long kappa) {
    if (kappa < 1) throw std::invalid_argument("indicator control: kappa must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->family = ControlFamily::Indicator;
    impl->kappa = kappa;
    return ControlFunction(std::move(impl));
}

ControlFunction ControlFunction::logistic(long kappa) {
    if (kappa < 1) throw std::invalid_argument("logistic control: kappa must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->family = ControlFamily::Logistic;
    impl->kappa = kappa;
    return ControlFunction(std::move(impl));
}

ControlFunction ControlFunction::constant(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("constant control: p must lie in [0,1]");
    auto impl = std::make_shared<Impl>();
    impl->family = ControlFamily::Constant;
    impl->p = Rational(p);
    return ControlFunction(std::move(impl));
}

ControlFunction ControlFunction::table(std::vector<Rational> values, Rational tail) {
    if (values.empty()) throw std::invalid_argument("table control: values must be nonempty");
    if (tail < 0 || tail > 1)
        throw std::invalid_argument("table control: tail must lie in [0,1]");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0) throw std::invalid_argument("table control: negative entry");
        if (i >= 1 && values[i] > 1)
            throw std::invalid_argument("table control: entries from index 1 must be <= 1");
        if (i >= 1 && values[i] > values[i - 1])
            throw std::invalid_argument("table control: entries must be nonincreasing");
    }
    if (values.back() < tail)
        throw std::invalid_argument("table control: entries must be >= tail");
    auto impl = std::make_shared<Impl>();
    impl->family = ControlFamily::Table;
    impl->values = std::move(values);
    impl->tail = std::move(tail);
    return ControlFunction(std::move(impl));
}

ControlFunction ControlFunction::table(const std::vector<double>& values, double tail) {
    std::vector<Rational> v;
    v.reserve(values.size());
    for (double x : values) v.emplace_back(x);
    return table(std::move(v), Rational(tail));
}

ControlFunction ControlFunction::square_ratio(long a, long b, Rational scale) {
    if (b < 1 || a < b)
        throw std::invalid_argument("square_ratio control: need a >= b >= 1 (nonincreasing)");
    if (scale <= 0 || scale > 1)
        throw std::invalid_argument("square_ratio control: scale must lie in (0,1]");
    // c(1) = scale*(1+a)^2/(1+b)^2 must be a probability
    Rational c1 = scale * Rational((1 + a) * (1 + a), (1 + b) * (1 + b));
    if (c1 > 1)
        throw std::invalid_argument("square_ratio control: c(1) exceeds 1");
    auto impl = std::make_shared<Impl>();
    impl->family = ControlFamily::SquareRatio;
    impl->a = a;
    impl->b = b;
    impl->scale = std::move(scale);
    return ControlFunction(std::move(impl));
}

double ControlFunction::eval(long i) const {
    if (i < 0) throw std::invalid_argument("control function: negative index");
    switch (impl_->family) {
        case ControlFamily::AllOne: return 1.0;
        case ControlFamily::Indicator: return i < impl_->kappa ? 1.0 : 0.0;
        case ControlFamily::Logistic:
            return i >= impl_->kappa ? 0.0
                                     : 1.0 - static_cast<double>(i) / static_cast<double>(impl_->kappa);
        case ControlFamily::Constant:
            return i == 0 ? 1.0 : static_cast<double>(impl_->p);
        default: return static_cast<double>(impl_->exact_at(i));
    }
}

double ControlFunction::acceptance(long i) const { return std::min(eval(i), 1.0); }

Rational ControlFunction::exact(long i) const {
    if (i < 0) throw std::invalid_argument("control function: negative index");
    return impl_->exact_at(i);
}

double ControlFunction::prefix_product(long n) const {
    if (n < 0) throw std::invalid_argument("prefix_product: negative index");
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto& prod = impl_->prod;
    if (prod.empty()) prod.push_back(eval(0));
    while (static_cast<long>(prod.size()) <= n) {
        long i = static_cast<long>(prod.size());
        prod.push_back(prod.back() * eval(i));
    }
    return prod[n];
}

Rational ControlFunction::prefix_product_exact(long n) const {
    if (n < 0) throw std::invalid_argument("prefix_product_exact: negative index");
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto& prod = impl_->prod_exact;
    if (prod.empty()) prod.push_back(impl_->exact_at(0));
    while (static_cast<long>(prod.size()) <= n) {
        long i = static_cast<long>(prod.size());
        prod.push_back(prod.back() * impl_->exact_at(i));
    }
    return prod[n];
}

Rational ControlFunction::limit_exact() const {
    switch (impl_->family) {
        case ControlFamily::AllOne: return 1;
        case ControlFamily::Indicator:
        case ControlFamily::Logistic: return 0;
        case ControlFamily::Constant: return impl_->p;
        case ControlFamily::Table: return impl_->tail;
        case ControlFamily::SquareRatio: return impl_->scale;
    }
    return 0;
}

double ControlFunction::limit() const { return static_cast<double>(limit_exact()); }

long ControlFunction::tail_start() const {
    switch (impl_->family) {
        case ControlFamily::AllOne: return 0;
        case ControlFamily::Indicator:
        case ControlFamily::Logistic: return impl_->kappa;
        case ControlFamily::Constant: return 1;
        case ControlFamily::Table: return static_cast<long>(impl_->values.size());
        case ControlFamily::SquareRatio: return 0;
    }
    return 0;
}

std::optional<long> ControlFunction::max_occupancy() const {
    switch (impl_->family) {
        case ControlFamily::Indicator:
        case ControlFamily::Logistic: return impl_->kappa;
        case ControlFamily::Constant:
            return impl_->p == 0 ? std::optional<long>(1) : std::nullopt;
        case ControlFamily::Table: {
            if (impl_->tail > 0) return std::nullopt;
            for (std::size_t i = 0; i < impl_->values.size(); ++i)
                if (impl_->values[i] == 0) return static_cast<long>(i);
            return static_cast<long>(impl_->values.size());
        }
        default: return std::nullopt;
    }
}

bool ControlFunction::pointwise_leq(const ControlFunction& other) const {
    // Exact comparison on a prefix covering both explicit parts. Beyond it:
    // a square_ratio law decreases monotonically to its scale, every other
    // family is constant, so "this(horizon) <= other's tail" together with
    // "this's limit <= other's limit" decides the rest. Square_ratio pairs
    // additionally get a wide prefix check (their ratio can be non-monotone).
    long horizon = std::max({tail_start(), other.tail_start(), 1L}) + 1;
    for (long i = 0; i <= horizon; ++i)
        if (exact(i) > other.exact(i)) return false;
    if (limit_exact() > other.limit_exact()) return false;
    if (family() == ControlFamily::SquareRatio &&
        other.family() == ControlFamily::SquareRatio) {
        for (long i = horizon + 1; i <= horizon + 4096; ++i)
            if (exact(i) > other.exact(i)) return false;
    }
    return true;
}

ControlFamily ControlFunction::family() const { return impl_->family; }
long ControlFunction::kappa() const { return impl_->kappa; }
double ControlFunction::constant_p() const { return static_cast<double>(impl_->p); }
const std::vector<Rational>& ControlFunction::table_values() const { return impl_->values; }
Rational ControlFunction::table_tail() const { return impl_->tail; }
long ControlFunction::ratio_a() const { return impl_->a; }
long ControlFunction::ratio_b() const { return impl_->b; }
Rational ControlFunction::ratio_scale() const { return impl_->scale; }

bool ControlFunction::operator==(const ControlFunction& other) const {
    if (impl_ == other.impl_) return true;
    if (impl_->family != other.impl_->family) return false;
    return impl_->kappa == other.impl_->kappa && impl_->p == other.impl_->p &&
           impl_->values == other.impl_->values && impl_->tail == other.impl_->tail &&
           impl_->a == other.impl_->a && impl_->b == other.impl_->b &&
           impl_->scale == other.impl_->scale;
}

}  // namespace prp
