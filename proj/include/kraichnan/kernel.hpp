#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "kraichnan/errors.hpp"

namespace kraichnan {

class KernelSpec;

namespace kernels {

// k(s,t) = C
struct Constant {
    double C;
};

// k(u) = c e^{-delta u}, u = |s-t|
struct Exponential {
    double c;
    double delta;
};

// k(u) = c2 + c1 e^{-delta u}
struct MixedExponential {
    double c2;
    double c1;
    double delta;
};

// k(u) = C (1+u)^{-a}, a > 1
struct PowerLaw {
    double C;
    double a;
};

// k(u) = c2 + c1 (1+u)^{-a}, a >= 1
struct AlgebraicMixed {
    double c2;
    double c1;
    double a;
};

// k(s,t) = h(s) h(t) with h tabulated on a uniform grid, linear
// interpolation, constant continuation past the last node.
struct Separable {
    std::vector<double> h;
    double step;

    double h_at(double u) const {
        if (h.empty()) return 0.0;
        const double x = u / step;
        const auto last = static_cast<double>(h.size() - 1);
        if (x >= last) return h.back();
        const auto i = static_cast<std::size_t>(x);
        const double w = x - static_cast<double>(i);
        return h[i] * (1.0 - w) + h[i + 1] * w;
    }
};

// k(s,t) = C (t/s)^a + k1(s-t) for s >= t; k1 optional stationary part.
struct RatioFlat {
    double C;
    double a;
    std::shared_ptr<const KernelSpec> stationary_part; // may be null
};

} // namespace kernels

class KernelSpec {
public:
    using Variant = std::variant<kernels::Constant, kernels::Exponential,
                                 kernels::MixedExponential, kernels::PowerLaw,
                                 kernels::AlgebraicMixed, kernels::Separable,
                                 kernels::RatioFlat>;

    explicit KernelSpec(Variant v) : v_(std::move(v)) { validate(); }

    static KernelSpec constant(double C) { return KernelSpec{kernels::Constant{C}}; }
    static KernelSpec exponential(double c, double delta) {
        return KernelSpec{kernels::Exponential{c, delta}};
    }
    static KernelSpec mixed_exponential(double c2, double c1, double delta) {
        return KernelSpec{kernels::MixedExponential{c2, c1, delta}};
    }
    static KernelSpec power_law(double C, double a) {
        return KernelSpec{kernels::PowerLaw{C, a}};
    }
    static KernelSpec algebraic_mixed(double c2, double c1, double a) {
        return KernelSpec{kernels::AlgebraicMixed{c2, c1, a}};
    }
    static KernelSpec separable(std::vector<double> h, double step) {
        return KernelSpec{kernels::Separable{std::move(h), step}};
    }
    static KernelSpec ratio_flat(double C, double a) {
        return KernelSpec{kernels::RatioFlat{C, a, nullptr}};
    }
    static KernelSpec ratio_flat(double C, double a, KernelSpec stationary_part) {
        return KernelSpec{kernels::RatioFlat{
            C, a, std::make_shared<const KernelSpec>(std::move(stationary_part))}};
    }

    const Variant& variant() const { return v_; }

    template <class T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }

private:
    void validate() const;

    Variant v_;
};

inline bool is_stationary(const KernelSpec& k) {
    using namespace kernels;
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Separable>) {
                return false;
            } else if constexpr (std::is_same_v<T, RatioFlat>) {
                return v.C == 0.0 || v.a == 0.0; // ratio term degenerates
            } else {
                return true;
            }
        },
        k.variant());
}

inline double evaluate(const KernelSpec& k, double s, double t) {
    using namespace kernels;
    if (s < 0.0 || t < 0.0) throw domain_error("kernel: negative time");
    if (t > s) std::swap(s, t); // symmetric extension
    const double u = s - t;
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return v.C;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return v.c * std::exp(-v.delta * u);
            } else if constexpr (std::is_same_v<T, MixedExponential>) {
                return v.c2 + v.c1 * std::exp(-v.delta * u);
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return v.C * std::pow(1.0 + u, -v.a);
            } else if constexpr (std::is_same_v<T, AlgebraicMixed>) {
                return v.c2 + v.c1 * std::pow(1.0 + u, -v.a);
            } else if constexpr (std::is_same_v<T, Separable>) {
                return v.h_at(s) * v.h_at(t);
            } else { // RatioFlat
                const double ratio = (s == 0.0) ? 1.0 : t / s;
                double val = v.C * std::pow(ratio, v.a);
                if (v.stationary_part) val += evaluate(*v.stationary_part, s, t);
                return val;
            }
        },
        k.variant());
}

inline double diagonal_sup(const KernelSpec& k) {
    using namespace kernels;
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return v.C;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return v.c;
            } else if constexpr (std::is_same_v<T, MixedExponential>) {
                return v.c2 + v.c1;
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return v.C;
            } else if constexpr (std::is_same_v<T, AlgebraicMixed>) {
                return v.c2 + v.c1;
            } else if constexpr (std::is_same_v<T, Separable>) {
                double m = 0.0;
                for (double x : v.h) m = std::max(m, x);
                return m * m;
            } else { // RatioFlat: ratio term is C on the diagonal
                double val = v.C;
                if (v.stationary_part) val += diagonal_sup(*v.stationary_part);
                return val;
            }
        },
        k.variant());
}

inline std::string family_name(const KernelSpec& k) {
    using namespace kernels;
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) return "constant";
            else if constexpr (std::is_same_v<T, Exponential>) return "exponential";
            else if constexpr (std::is_same_v<T, MixedExponential>) return "mixed_exponential";
            else if constexpr (std::is_same_v<T, PowerLaw>) return "power_law";
            else if constexpr (std::is_same_v<T, AlgebraicMixed>) return "algebraic_mixed";
            else if constexpr (std::is_same_v<T, Separable>) return "separable";
            else return "ratio_flat";
        },
        k.variant());
}

inline void KernelSpec::validate() const {
    using namespace kernels;
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                if (!(v.C >= 0.0)) throw domain_error("constant kernel: C >= 0 required");
            } else if constexpr (std::is_same_v<T, Exponential>) {
                if (!(v.c > 0.0)) throw domain_error("exponential kernel: c > 0 required");
                if (!(v.delta > 0.0)) throw domain_error("exponential kernel: delta > 0 required");
            } else if constexpr (std::is_same_v<T, MixedExponential>) {
                if (!(v.c2 > 0.0 && v.c1 > 0.0))
                    throw domain_error("mixed_exponential kernel: c1, c2 > 0 required");
                if (!(v.delta > 0.0))
                    throw domain_error("mixed_exponential kernel: delta > 0 required");
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                if (!(v.C >= 0.0)) throw domain_error("power_law kernel: C >= 0 required");
                if (!(v.a > 1.0)) throw domain_error("power_law kernel: a > 1 required");
            } else if constexpr (std::is_same_v<T, AlgebraicMixed>) {
                if (!(v.c2 > 0.0 && v.c1 > 0.0))
                    throw domain_error("algebraic_mixed kernel: c1, c2 > 0 required");
                if (!(v.a >= 1.0)) throw domain_error("algebraic_mixed kernel: a >= 1 required");
            } else if constexpr (std::is_same_v<T, Separable>) {
                if (v.h.size() < 2) throw domain_error("separable kernel: need >= 2 table nodes");
                if (!(v.step > 0.0)) throw domain_error("separable kernel: step > 0 required");
                for (double x : v.h)
                    if (!(x >= 0.0)) throw domain_error("separable kernel: h >= 0 required");
            } else { // RatioFlat
                if (!(v.C >= 0.0)) throw domain_error("ratio_flat kernel: C >= 0 required");
                if (!(v.a >= 0.0)) throw domain_error("ratio_flat kernel: a >= 0 required");
                if (v.stationary_part && !is_stationary(*v.stationary_part))
                    throw domain_error("ratio_flat kernel: stationary_part must be stationary");
            }
        },
        v_);
}

} // namespace kraichnan
