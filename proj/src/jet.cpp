#include "prc/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace prc {

namespace {

double factorialOf(const Exponents& e, int nvars) {
    double f = 1.0;
    for (int v = 0; v < nvars; ++v)
        for (int k = 2; k <= e[v]; ++k) f *= k;
    return f;
}

} // namespace

struct JetLayoutBuilder {
    static std::shared_ptr<JetLayout> build(int nvars, int nx, int ox, int oy, int ot) {
        auto L = std::make_shared<JetLayout>();
        L->nvars = nvars;
        L->nx = nx;
        L->orderX = ox;
        L->orderY = oy;
        L->orderTotal = ot;

        // enumerate admissible monomials, constant term first
        Exponents e{};
        enumerate(*L, e, 0, 0, 0);
        std::stable_sort(L->monomials.begin(), L->monomials.end(),
                         [&](const Exponents& a, const Exponents& b) {
                             int da = degree(a, nvars), db = degree(b, nvars);
                             if (da != db) return da < db;
                             return a < b;
                         });

        L->factorials.reserve(L->size());
        for (const auto& m : L->monomials) L->factorials.push_back(factorialOf(m, nvars));

        // mixed-radix dense lookup
        std::uint64_t span = 1;
        for (int v = 0; v < nvars; ++v) {
            int cap = (v < nx) ? std::min(ox, ot) : std::min(oy, ot);
            span *= static_cast<std::uint64_t>(cap + 1);
        }
        L->lookup_.assign(span, -1);
        for (std::size_t i = 0; i < L->size(); ++i)
            L->lookup_[L->radixKey(L->monomials[i])] = static_cast<std::int32_t>(i);

        // multiplication table
        const auto n = L->size();
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                Exponents s{};
                bool ok = true;
                int dx = 0, dy = 0;
                for (int v = 0; v < nvars; ++v) {
                    s[v] = static_cast<std::uint8_t>(L->monomials[i][v] + L->monomials[j][v]);
                    (v < nx ? dx : dy) += s[v];
                }
                if (dx > ox || dy > oy || dx + dy > ot) ok = false;
                if (!ok) continue;
                int dst = L->indexOf(s);
                if (dst >= 0)
                    L->mulTriples.push_back({i, j, static_cast<std::uint32_t>(dst)});
            }
        }
        std::sort(L->mulTriples.begin(), L->mulTriples.end(),
                  [](const JetLayout::Triple& a, const JetLayout::Triple& b) {
                      return a.dst < b.dst;
                  });
        return L;
    }

    static int degree(const Exponents& e, int nvars) {
        int d = 0;
        for (int v = 0; v < nvars; ++v) d += e[v];
        return d;
    }

    static void enumerate(JetLayout& L, Exponents& e, int var, int dx, int dy) {
        if (var == L.nvars) {
            L.monomials.push_back(e);
            return;
        }
        const bool isX = var < L.nx;
        const int groupCap = isX ? L.orderX : L.orderY;
        const int groupUsed = isX ? dx : dy;
        for (int k = 0; k + groupUsed <= groupCap && dx + dy + k <= L.orderTotal; ++k) {
            e[var] = static_cast<std::uint8_t>(k);
            enumerate(L, e, var + 1, dx + (isX ? k : 0), dy + (isX ? 0 : k));
        }
        e[var] = 0;
    }
};

std::uint64_t JetLayout::radixKey(const Exponents& e) const {
    std::uint64_t key = 0;
    for (int v = 0; v < nvars; ++v) {
        int cap = (v < nx) ? std::min(orderX, orderTotal) : std::min(orderY, orderTotal);
        key = key * static_cast<std::uint64_t>(cap + 1) + e[v];
    }
    return key;
}

int JetLayout::indexOf(const Exponents& e) const {
    for (int v = 0; v < nvars; ++v) {
        int cap = (v < nx) ? std::min(orderX, orderTotal) : std::min(orderY, orderTotal);
        if (e[v] > cap) return -1;
    }
    auto idx = lookup_[radixKey(e)];
    return idx;
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int nx, int ox, int oy, int ot) {
    if (nvars < 1 || nvars > kMaxVars || nx < 0 || nx > nvars)
        throw Error("jet layout: bad variable counts");
    if (ot < 0 || ox < 0 || oy < 0 || ot > kMaxOrder)
        throw Error("jet layout: unsupported order (max " + std::to_string(kMaxOrder) + ")");
    ox = std::min(ox, ot);
    oy = std::min(oy, ot);
    ot = std::min(ot, ox + oy);

    using Key = std::tuple<int, int, int, int, int>;
    static std::map<Key, std::shared_ptr<const JetLayout>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[Key{nvars, nx, ox, oy, ot}];
    if (!slot) slot = JetLayoutBuilder::build(nvars, nx, ox, oy, ot);
    return slot;
}

// ---------------------------------------------------------------------------

Jet::Jet(LayoutPtr layout, double value) : layout_(std::move(layout)) {
    c_.assign(layout_->size(), 0.0);
    c_[0] = value;
}

Jet Jet::variable(LayoutPtr layout, int var, double value) {
    Jet j(layout, value);
    Exponents e{};
    e[var] = 1;
    int idx = j.layout_->indexOf(e);
    if (idx < 0) throw Error("jet layout cannot hold a linear term for this variable");
    j.c_[idx] = 1.0;
    return j;
}

double Jet::extract(std::span<const int> multiIndex) const {
    if (static_cast<int>(multiIndex.size()) != layout_->nvars)
        throw Error("extract: multi-index arity mismatch");
    Exponents e{};
    for (int v = 0; v < layout_->nvars; ++v) {
        if (multiIndex[v] < 0) throw Error("extract: negative multi-index entry");
        e[v] = static_cast<std::uint8_t>(multiIndex[v]);
    }
    int idx = layout_->indexOf(e);
    if (idx < 0) throw Error("extract: multi-index outside the jet's layout");
    return c_[idx] * layout_->factorials[idx];
}

Jet Jet::deriv(int var) const {
    const auto& L = *layout_;
    int ox = L.orderX, oy = L.orderY, ot = L.orderTotal - 1;
    (var < L.nx ? ox : oy) -= 1;
    if (ot < 0 || ox < 0 || oy < 0)
        throw Error("jet derivative: truncation order exhausted");
    auto target = JetLayout::get(L.nvars, L.nx, ox, oy, ot);
    Jet out(target, 0.0);
    for (std::size_t i = 0; i < target->size(); ++i) {
        Exponents src = target->monomials[i];
        src[var] += 1;
        int j = L.indexOf(src);
        out.c_[i] = static_cast<double>(src[var]) * c_[j];
    }
    return out;
}

Jet Jet::truncated(const LayoutPtr& target) const {
    if (target == layout_) return *this;
    if (target->nvars != layout_->nvars || target->nx != layout_->nx)
        throw Error("jet truncation: incompatible variable sets");
    Jet out(target, 0.0);
    for (std::size_t i = 0; i < target->size(); ++i) {
        int j = layout_->indexOf(target->monomials[i]);
        if (j < 0) throw Error("jet truncation: target layout is not coarser");
        out.c_[i] = c_[j];
    }
    return out;
}

namespace {

LayoutPtr commonLayout(const LayoutPtr& a, const LayoutPtr& b) {
    if (a == b) return a;
    if (a->nvars != b->nvars || a->nx != b->nx)
        throw Error("jet arithmetic: incompatible variable sets");
    return JetLayout::get(a->nvars, a->nx, std::min(a->orderX, b->orderX),
                          std::min(a->orderY, b->orderY),
                          std::min(a->orderTotal, b->orderTotal));
}

} // namespace

Jet Jet::operator-() const {
    Jet out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

Jet& Jet::operator+=(double s) { c_[0] += s; return *this; }
Jet& Jet::operator-=(double s) { c_[0] -= s; return *this; }
Jet& Jet::operator*=(double s) { for (auto& v : c_) v *= s; return *this; }
Jet& Jet::operator/=(double s) {
    if (s == 0.0) throw DomainError("jet division by zero scalar");
    for (auto& v : c_) v /= s;
    return *this;
}

Jet& Jet::operator+=(const Jet& o) {
    auto L = commonLayout(layout_, o.layout());
    if (L != layout_) *this = truncated(L);
    if (L == o.layout()) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    } else {
        Jet ot = o.truncated(L);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += ot.c_[i];
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    auto L = commonLayout(layout_, o.layout());
    if (L != layout_) *this = truncated(L);
    if (L == o.layout()) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    } else {
        Jet ot = o.truncated(L);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= ot.c_[i];
    }
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    auto L = commonLayout(a.layout(), b.layout());
    const Jet& at = (L == a.layout()) ? a : a.truncated(L);
    const Jet& bt = (L == b.layout()) ? b : b.truncated(L);
    // bind to locals so the temporaries above stay alive
    Jet out(L, 0.0);
    const double* pa = at.c_.data();
    const double* pb = bt.c_.data();
    double* pc = out.c_.data();
    for (const auto& t : L->mulTriples) pc[t.dst] += pa[t.a] * pb[t.b];
    return out;
}

Jet Jet::composed(std::span<const double> k) const {
    // Horner in N = (jet - value); k[i] are Taylor coefficients at value().
    Jet n = *this;
    n.c_[0] = 0.0;
    Jet r(layout_, k.empty() ? 0.0 : k.back());
    for (std::size_t i = k.size(); i-- > 1;) {
        r = r * n;
        r += k[i - 1];
    }
    return r;
}

namespace {

std::vector<double> recipCoeffs(double v, int K) {
    if (v == 0.0) throw DomainError("jet division by zero");
    std::vector<double> c(K + 1);
    double p = 1.0 / v;
    for (int k = 0; k <= K; ++k) {
        c[k] = (k % 2 == 0) ? p : -p;
        p /= v;
    }
    return c;
}

} // namespace

Jet operator/(const Jet& a, const Jet& b) {
    auto L = commonLayout(a.layout(), b.layout());
    Jet bt = (L == b.layout()) ? b : b.truncated(L);
    Jet inv = bt.composed(recipCoeffs(bt.value(), L->orderTotal));
    return a * inv;
}

Jet operator/(double s, const Jet& b) {
    Jet inv = b.composed(recipCoeffs(b.value(), b.layout()->orderTotal));
    return inv *= s;
}

Jet sqrt(const Jet& a) {
    double v = a.value();
    if (v <= 0.0) throw DomainError("jet sqrt of non-positive value");
    int K = a.layout()->orderTotal;
    std::vector<double> c(K + 1);
    // binom(1/2, k) v^{1/2-k}
    double p = std::sqrt(v);
    double binom = 1.0;
    for (int k = 0; k <= K; ++k) {
        c[k] = binom * p;
        binom *= (0.5 - k) / (k + 1);
        p /= v;
    }
    return a.composed(c);
}

Jet log(const Jet& a) {
    double v = a.value();
    if (v <= 0.0) throw DomainError("jet log of non-positive value");
    int K = a.layout()->orderTotal;
    std::vector<double> c(K + 1);
    c[0] = std::log(v);
    double p = 1.0 / v;
    for (int k = 1; k <= K; ++k) {
        c[k] = ((k % 2 == 1) ? 1.0 : -1.0) * p / k;
        p /= v;
    }
    return a.composed(c);
}

Jet exp(const Jet& a) {
    int K = a.layout()->orderTotal;
    std::vector<double> c(K + 1);
    double e = std::exp(a.value());
    double f = 1.0;
    for (int k = 0; k <= K; ++k) {
        c[k] = e / f;
        f *= (k + 1);
    }
    return a.composed(c);
}

Jet sin(const Jet& a) {
    int K = a.layout()->orderTotal;
    std::vector<double> c(K + 1);
    double v = a.value();
    double f = 1.0;
    for (int k = 0; k <= K; ++k) {
        switch (k % 4) {
            case 0: c[k] = std::sin(v) / f; break;
            case 1: c[k] = std::cos(v) / f; break;
            case 2: c[k] = -std::sin(v) / f; break;
            case 3: c[k] = -std::cos(v) / f; break;
        }
        f *= (k + 1);
    }
    return a.composed(c);
}

Jet cos(const Jet& a) {
    int K = a.layout()->orderTotal;
    std::vector<double> c(K + 1);
    double v = a.value();
    double f = 1.0;
    for (int k = 0; k <= K; ++k) {
        switch (k % 4) {
            case 0: c[k] = std::cos(v) / f; break;
            case 1: c[k] = -std::sin(v) / f; break;
            case 2: c[k] = -std::cos(v) / f; break;
            case 3: c[k] = std::sin(v) / f; break;
        }
        f *= (k + 1);
    }
    return a.composed(c);
}

Jet tanh(const Jet& a) {
    // phi' = 1 - phi^2  =>  (k+1) c_{k+1} = [k == 0] - sum_i c_i c_{k-i}
    int K = a.layout()->orderTotal;
    std::vector<double> c(K + 1);
    c[0] = std::tanh(a.value());
    for (int k = 0; k < K; ++k) {
        double conv = 0.0;
        for (int i = 0; i <= k; ++i) conv += c[i] * c[k - i];
        c[k + 1] = ((k == 0 ? 1.0 : 0.0) - conv) / (k + 1);
    }
    return a.composed(c);
}

Jet powi(const Jet& a, long n) {
    if (n == 0) return Jet(a.layout(), 1.0);
    if (n < 0) return 1.0 / powi(a, -n);
    Jet base = a;
    Jet result(a.layout(), 1.0);
    bool first = true;
    long e = n;
    while (e > 0) {
        if (e & 1) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Jet pow(const Jet& a, double r) {
    if (r == std::floor(r) && std::abs(r) < 64)
        return powi(a, static_cast<long>(r));
    double v = a.value();
    if (v <= 0.0) throw DomainError("jet pow: non-integer exponent with non-positive base");
    int K = a.layout()->orderTotal;
    std::vector<double> c(K + 1);
    double binom = 1.0;
    double p = std::pow(v, r);
    for (int k = 0; k <= K; ++k) {
        c[k] = binom * p;
        binom *= (r - k) / (k + 1);
        p /= v;
    }
    return a.composed(c);
}

std::vector<Jet> seedPoint(const LayoutPtr& layout, std::span<const double> point) {
    if (static_cast<int>(point.size()) != layout->nvars)
        throw Error("seedPoint: dimension mismatch");
    std::vector<Jet> out;
    out.reserve(point.size());
    for (int v = 0; v < layout->nvars; ++v)
        out.push_back(Jet::variable(layout, v, point[v]));
    return out;
}

Jet embedXOnly(const Jet& xjet, const LayoutPtr& full) {
    const auto& src = *xjet.layout();
    if (src.nvars != src.nx || full->nx != src.nvars)
        throw Error("embedXOnly: source must be x-only over the full layout's x-group");
    if (full->orderX > src.orderTotal)
        throw Error("embedXOnly: source truncation order too small for target x-order");
    Jet out(full, 0.0);
    for (std::size_t i = 0; i < src.size(); ++i) {
        int j = full->indexOf(src.monomials[i]); // zero-extended in the y-group
        if (j >= 0) out.coeff(static_cast<std::size_t>(j)) = xjet.coeff(i);
    }
    return out;
}

} // namespace prc
