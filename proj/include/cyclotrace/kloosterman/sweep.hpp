#pragma once

// Double-precision tables of exponential sums over a range of moduli, for the
// coefficient series of the poincare and traces modules.

#include <cmath>
#include <numeric>
#include <vector>

#include "../arithmetic/characters.hpp"
#include "../arithmetic/integers.hpp"
#include "../arithmetic/quadform.hpp"
#include "../numerics/errors.hpp"

namespace cyclotrace {

// x mod c for 0 <= x < 2^52 without a hardware division.
class FastMod {
public:
    explicit FastMod(long c = 1) : c_(c), inv_(1.0 / static_cast<double>(c)) {}
    long operator()(long x) const {
        long q = static_cast<long>(static_cast<double>(x) * inv_);
        long r = x - q * c_;
        if (r < 0) r += c_;
        if (r >= c_) r -= c_;
        return r;
    }

private:
    long c_;
    double inv_;
};

// Smallest prime factor table.
class SpfTable {
public:
    explicit SpfTable(long n) : spf_(n + 1, 0) {
        for (long i = 2; i <= n; ++i)
            if (spf_[i] == 0)
                for (long j = i; j <= n; j += i)
                    if (spf_[j] == 0) spf_[j] = i;
    }
    long operator[](long v) const { return spf_[v]; }
    long size() const { return static_cast<long>(spf_.size()) - 1; }

private:
    std::vector<long> spf_;
};

// One modulus: unit flags, inverses (0 at non-units) and a cos/sin table of e(k/c).
class ModulusData {
public:
    explicit ModulusData(const SpfTable& spf) : spf_(spf) {}

    void reset(long c) {
        if (c > spf_.size()) throw domain_error("ModulusData: modulus beyond sieve");
        c_ = c;
        mod_ = FastMod(c);
        unit_.assign(c, 1);
        if (c == 1) {
            inv_.assign(1, 0);
        } else {
            unit_[0] = 0;
            for (long r = c; r > 1;) {
                long p = spf_[r];
                while (r % p == 0) r /= p;
                for (long j = 0; j < c; j += p) unit_[j] = 0;
            }
            inv_.assign(c, 0);
            units_.clear();
            for (long v = 1; v < c; ++v)
                if (unit_[v]) units_.push_back(v);
            // batch inversion, interleaved over independent chains
            constexpr int L = 8;
            const long U = static_cast<long>(units_.size());
            pre_.resize(U);
            long acc[L];
            for (int l = 0; l < L; ++l) acc[l] = 1;
            for (long i = 0; i < U; ++i) {
                pre_[i] = acc[i % L];
                acc[i % L] = mod_(acc[i % L] * units_[i]);
            }
            for (int l = 0; l < L; ++l) acc[l] = inv_mod(acc[l], c);
            for (long i = U - 1; i >= 0; --i) {
                long v = units_[i];
                inv_[v] = mod_(acc[i % L] * pre_[i]);
                acc[i % L] = mod_(acc[i % L] * v);
            }
        }
        fill_roots();
    }

    long modulus() const { return c_; }
    const FastMod& reducer() const { return mod_; }
    bool is_unit(long v) const { return unit_[v]; }
    const std::vector<signed char>& unit_flags() const { return unit_; }
    const std::vector<long>& inverses() const { return inv_; }
    const std::vector<double>& cos_table() const { return cos_; }
    const std::vector<double>& sin_table() const { return sin_; }

private:
    void fill_roots() {
        constexpr long B = 32;
        cos_.resize(c_);
        sin_.resize(c_);
        const double w = 2 * M_PI / static_cast<double>(c_);
        double cb[B], sb[B];
        for (long j = 0; j < B; ++j) {
            cb[j] = std::cos(w * j);
            sb[j] = std::sin(w * j);
        }
        for (long k0 = 0; k0 < c_; k0 += B) {
            double c0 = std::cos(w * k0), s0 = std::sin(w * k0);
            long e = std::min(B, c_ - k0);
            for (long j = 0; j < e; ++j) {
                cos_[k0 + j] = c0 * cb[j] - s0 * sb[j];
                sin_[k0 + j] = s0 * cb[j] + c0 * sb[j];
            }
        }
    }

    const SpfTable& spf_;
    long c_ = 0;
    FastMod mod_;
    std::vector<signed char> unit_;
    std::vector<long> inv_, units_, pre_;
    std::vector<double> cos_, sin_;
};

// chi(v) = (c/v) for odd v < c coprime to c, 0 elsewhere.
inline void jacobi_row(const ModulusData& md, const SpfTable& spf, std::vector<signed char>& chi) {
    long c = md.modulus();
    chi.assign(c, 0);
    if (c > 1) chi[1] = 1;
    for (long v = 3; v < c; v += 2) {
        if (!md.is_unit(v)) continue;
        long p = spf[v];
        chi[v] = (p == v) ? static_cast<signed char>(kronecker(c, p)) : static_cast<signed char>(chi[p] * chi[v / p]);
    }
}

struct SweepRequest {
    long n;
    long c_max;
};

// K_0(m, n; c) for c = 1..c_max(n); result[i][c] for request i (index 0 unused).
inline std::vector<std::vector<double>> kloosterman_int_sweep(long m, const std::vector<SweepRequest>& req) {
    long C = 1;
    for (const auto& r : req) C = std::max(C, r.c_max);
    std::vector<std::vector<double>> out(req.size());
    for (size_t i = 0; i < req.size(); ++i) out[i].assign(req[i].c_max + 1, 0.0);
    SpfTable spf(C);
    ModulusData md(spf);
    std::vector<long> mv;
    std::vector<double> wt;
    for (long c = 1; c <= C; ++c) {
        md.reset(c);
        const FastMod& mod = md.reducer();
        const auto& ui = md.inverses();
        const auto& unit = md.unit_flags();
        long mm = pos_mod(m, c);
        mv.resize(c);
        wt.resize(c);
        for (long v = 0; v < c; ++v) {
            mv[v] = mod(mm * ui[v]);
            wt[v] = unit[v];
        }
        const double* cs = md.cos_table().data();
        for (size_t i = 0; i < req.size(); ++i) {
            if (c > req[i].c_max) continue;
            long nn = pos_mod(req[i].n, c);
            double s = 0;
            long nv = 0;
            for (long v = 0; v < c; ++v) {
                long k = mv[v] + nv;
                if (k >= c) k -= c;
                s += wt[v] * cs[k];
                nv += nn;
                if (nv >= c) nv -= c;
            }
            out[i][c] = s;
        }
    }
    return out;
}

// Plus-space sums at c = 4, 8, ..., 4 * len: real parts of K^+(m, n; c), indexed c/4.
struct PlusSweep {
    std::vector<std::vector<double>> values;
    double max_imag = 0;
};

inline PlusSweep kloosterman_plus_sweep(long m, const std::vector<SweepRequest>& req) {
    long C = 4;
    for (const auto& r : req) C = std::max(C, r.c_max);
    PlusSweep out;
    out.values.resize(req.size());
    for (size_t i = 0; i < req.size(); ++i) out.values[i].assign(req[i].c_max / 4 + 1, 0.0);
    SpfTable spf(C);
    ModulusData md(spf);
    std::vector<signed char> chi;
    std::vector<long> mv;
    std::vector<double> wr, wi;  // chi(v) eps_v on odd v
    for (long c = 4; c <= C; c += 4) {
        md.reset(c);
        jacobi_row(md, spf, chi);
        const FastMod& mod = md.reducer();
        const auto& ui = md.inverses();
        long mm = pos_mod(m, c);
        long half = c / 2;
        mv.resize(half);
        wr.resize(half);
        wi.resize(half);
        for (long j = 0; j < half; ++j) {
            long v = 2 * j + 1;
            mv[j] = mod(mm * ui[v]);
            bool three = (v & 3) == 3;
            wr[j] = three ? 0.0 : chi[v];
            wi[j] = three ? chi[v] : 0.0;
        }
        const double* cs = md.cos_table().data();
        const double* sn = md.sin_table().data();
        double f = (c / 4) % 2 ? 2.0 : 1.0;
        for (size_t i = 0; i < req.size(); ++i) {
            if (c > req[i].c_max) continue;
            long nn = pos_mod(req[i].n, c);
            long n2 = 2 * nn % c;
            double re = 0, im = 0;
            long nv = nn;  // n v for v = 1
            for (long j = 0; j < half; ++j) {
                long k = mv[j] + nv;
                if (k >= c) k -= c;
                double a = cs[k], b = sn[k];
                re += wr[j] * a - wi[j] * b;
                im += wr[j] * b + wi[j] * a;
                nv += n2;
                if (nv >= c) nv -= c;
            }
            // (1 - i) f (re + i im)
            out.values[i][c / 4] = f * (re + im);
            out.max_imag = std::max(out.max_imag, std::fabs(f * (im - re)));
        }
    }
    return out;
}

// Salie sums S_m(d, D; c) at c = 4, 8, ..., c_max, indexed c/4 (real and imaginary parts).
struct SalieSweep {
    std::vector<double> re, im;
};

inline SalieSweep salie_sweep(long m, long d, long D, long c_max) {
    if (!is_fundamental_discriminant(D)) throw domain_error("salie_sweep: D must be a fundamental discriminant");
    if (!is_discriminant(d)) throw domain_error("salie_sweep: d must be a discriminant");
    SalieSweep out;
    out.re.assign(c_max / 4 + 1, 0.0);
    out.im.assign(c_max / 4 + 1, 0.0);
    long Dd = D * d;
    for (long c = 4; c <= c_max; c += 4) {
        long t = pos_mod(Dd, c);
        long sq = 0;  // b^2 mod c
        double re = 0, im = 0;
        const double w = 2 * M_PI / static_cast<double>(c);
        for (long b = 0; b < c; ++b) {
            if (sq == t) {
                int chi = genus_character(D, QuadForm{c / 4, b, (b * b - Dd) / c});
                if (chi != 0) {
                    long k = pos_mod(2 * m, c) * b % c;
                    re += chi * std::cos(w * k);
                    im += chi * std::sin(w * k);
                }
            }
            sq += 2 * b + 1;
            while (sq >= c) sq -= c;
        }
        out.re[c / 4] = re;
        out.im[c / 4] = im;
    }
    return out;
}

}  // namespace cyclotrace
