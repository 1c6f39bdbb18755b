#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

namespace relmass::ode {

namespace dop853_detail {

// Node fractions, stage matrix, 8th-order weights, 5th/3rd-order error
// weights and the 7th-order dense-output coefficients of Hairer's DOP853.
inline constexpr double c2 = 0.05260015195876773187856;
inline constexpr double c3 = 0.07890022793815159781784;
inline constexpr double c4 = 0.11835034190722739672676;
inline constexpr double c5 = 0.28164965809277260327324;
inline constexpr double c6 = 0.33333333333333333333333;
inline constexpr double c7 = 0.25;
inline constexpr double c8 = 0.30769230769230769230769;
inline constexpr double c9 = 0.65128205128205128205128;
inline constexpr double c10 = 0.6;
inline constexpr double c11 = 0.85714285714285714285714;

inline constexpr double a21 = 0.05260015195876773187856;
inline constexpr double a31 = 0.01972505698453789945446;
inline constexpr double a32 = 0.05917517095361369836338;
inline constexpr double a41 = 0.02958758547680684918169;
inline constexpr double a43 = 0.08876275643042054754507;
inline constexpr double a51 = 0.24136513415926668550237;
inline constexpr double a53 = -0.88454947932828608534486;
inline constexpr double a54 = 0.92483400326179200311574;
inline constexpr double a61 = 0.03703703703703703703704;
inline constexpr double a64 = 0.17082860872947387127960;
inline constexpr double a65 = 0.12546768756682242501669;
inline constexpr double a71 = 0.037109375;
inline constexpr double a74 = 0.17025221101954403931498;
inline constexpr double a75 = 0.06021653898045596068502;
inline constexpr double a76 = -0.017578125;
inline constexpr double a81 = 0.03709200011850479271088;
inline constexpr double a84 = 0.17038392571223999381021;
inline constexpr double a85 = 0.10726203044637328465181;
inline constexpr double a86 = -0.01531943774862440175279;
inline constexpr double a87 = 0.00827378916381402288758;
inline constexpr double a91 = 0.62411095871607571711443;
inline constexpr double a94 = -3.36089262944694129406857;
inline constexpr double a95 = -0.86821934684172600681819;
inline constexpr double a96 = 27.5920996994467083049416;
inline constexpr double a97 = 20.1540675504778934086187;
inline constexpr double a98 = -43.4898841810699588477366;
inline constexpr double a101 = 0.47766253643826436589043;
inline constexpr double a104 = -2.48811461997166764192642;
inline constexpr double a105 = -0.59029082683684299637145;
inline constexpr double a106 = 21.2300514481811942347289;
inline constexpr double a107 = 15.2792336328824235832597;
inline constexpr double a108 = -33.2882109689848629194453;
inline constexpr double a109 = -0.02033120170850862613582;
inline constexpr double a111 = -0.93714243008598732571704;
inline constexpr double a114 = 5.18637242884406370830024;
inline constexpr double a115 = 1.09143734899672957818500;
inline constexpr double a116 = -8.14978701074692612513997;
inline constexpr double a117 = -18.5200656599969598641566;
inline constexpr double a118 = 22.7394870993505042818970;
inline constexpr double a119 = 2.49360555267965238987089;
inline constexpr double a1110 = -3.04676447189821950038237;
inline constexpr double a121 = 2.27331014751653820792360;
inline constexpr double a124 = -10.5344954667372501984067;
inline constexpr double a125 = -2.00087205822486249909676;
inline constexpr double a126 = -17.9589318631187989172766;
inline constexpr double a127 = 27.9488845294199600508500;
inline constexpr double a128 = -2.85899827713502369474066;
inline constexpr double a129 = -8.87285693353062954433549;
inline constexpr double a1210 = 12.3605671757943030647266;
inline constexpr double a1211 = 0.64339274601576353035597;

inline constexpr double b1 = 0.05429373411656876223805;
inline constexpr double b6 = 4.45031289275240888144114;
inline constexpr double b7 = 1.89151789931450038304282;
inline constexpr double b8 = -5.80120396001058478146721;
inline constexpr double b9 = 0.31116436695781989440892;
inline constexpr double b10 = -0.15216094966251607855618;
inline constexpr double b11 = 0.20136540080403034837478;
inline constexpr double b12 = 0.04471061572777259051769;

inline constexpr double bhh1 = 0.24409448818897637795276;
inline constexpr double bhh2 = 0.73384668828161185734136;
inline constexpr double bhh3 = 0.02205882352941176470588;
inline constexpr double er1 = 0.01312004499419488073250;
inline constexpr double er6 = -1.22515644637620444072057;
inline constexpr double er7 = -0.49575894965725019152141;
inline constexpr double er8 = 1.66437718245498653696153;
inline constexpr double er9 = -0.35032884874997368168865;
inline constexpr double er10 = 0.33417911871301747902973;
inline constexpr double er11 = 0.08192320648511571246571;
inline constexpr double er12 = -0.02235530786388629525884;

inline constexpr double d41 = -5.40685903845352664250302;
inline constexpr double d46 = 367.268892700041893590281;
inline constexpr double d47 = 154.609958204083905482676;
inline constexpr double d48 = -505.920283865412564024766;
inline constexpr double d49 = 15.5975154819608130688200;
inline constexpr double d410 = -26.1936204184402805956691;
inline constexpr double d411 = -0.74003512364122230844721;
inline constexpr double d412 = 1.11776539319431476294221;
inline constexpr double d413 = -0.33333333333333333333333;
inline constexpr double d51 = 6.51987095363079615048119;
inline constexpr double d56 = -1066.34956011730205278592;
inline constexpr double d57 = -351.864047514639508625601;
inline constexpr double d58 = 1363.51955696662884408368;
inline constexpr double d59 = -112.727669432657582669864;
inline constexpr double d510 = 159.796191868560289612921;
inline constexpr double d511 = -2.13865100308788816220259;
inline constexpr double d512 = -3.75569172113289760348584;
inline constexpr double d513 = 7.0;
inline constexpr double d61 = 10.4698004763293477204238;
inline constexpr double d66 = -1380.01473607038123167155;
inline constexpr double d67 = -531.219827862514074379012;
inline constexpr double d68 = 1866.98964341870892451324;
inline constexpr double d69 = -53.3302605020547902574560;
inline constexpr double d610 = 82.4147560258671369782481;
inline constexpr double d611 = 7.38443654502992069572676;
inline constexpr double d612 = 0.41729908012587751149843;
inline constexpr double d613 = -3.11111111111111111111111;
inline constexpr double d71 = -16.6338582677165354330709;
inline constexpr double d76 = 4516.16568914956011730205;
inline constexpr double d77 = 1393.85185384057776465219;
inline constexpr double d78 = -5687.52042419481539670071;
inline constexpr double d79 = 473.965563750151263163661;
inline constexpr double d710 = -661.810776942355889724311;
inline constexpr double d711 = -18.0180473354013232598119;

}  // namespace dop853_detail

// Explicit adaptive Runge-Kutta of order 8(5,3) after Dormand & Prince with
// 7th-order continuous extension (Hairer's DOP853).  The dimension is fixed
// at compile time; the right-hand side is any callable
// void(double t, const double y[N], double f[N]).
//
// Usage: construct, init(t0, y0), then repeatedly take_step(); after every
// accepted step the interval [prev_time(), time()] can be interpolated with
// dense(t, out).  take_step() returns false on step-size underflow, leaving
// state() at the last good point.
template <std::size_t N>
class Dop853 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double t, const double* y, double* f)>;

    Dop853(Rhs rhs, double rel_tol) : rhs_(std::move(rhs)), tol_(rel_tol) {}

    void init(double t0, const State& y0) {
        t_ = t_prev_ = t0;
        y_ = y0;
        // Per-component error scales: relative to each component's initial
        // magnitude, with a floor tied to the largest component so that
        // small-amplitude coordinates (an internal clock riding on a fast
        // center of mass) are still resolved relative to their own swing.
        double ymax = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            ymax = std::max(ymax, std::abs(y0[i]));
        for (std::size_t i = 0; i < N; ++i)
            scale_[i] = std::max({std::abs(y0[i]), 1e-3 * ymax, 1e-30});
        cont_ = {};
        cont_[0] = y0;  // dense() degenerates to y0 until the first step
        rhs_(t_, y_.data(), k1_.data());
        h_ = initial_step();
    }

    double time() const { return t_; }
    double prev_time() const { return t_prev_; }
    const State& state() const { return y_; }

    // Caps the next attempted step so it lands exactly on t_limit when close.
    void limit_step(double t_limit) {
        if (t_ + h_ > t_limit)
            h_ = t_limit - t_;
    }

    bool take_step();

    void dense(double t, State& out) const {
        const double span = t_ - t_prev_;
        double s = span != 0.0 ? (t - t_prev_) / span : 0.0;
        const double s1 = 1.0 - s;
        const auto& r = cont_;
        for (std::size_t i = 0; i < N; ++i) {
            out[i] = r[0][i] +
                     s * (r[1][i] +
                          s1 * (r[2][i] +
                                s * (r[3][i] +
                                     s1 * (r[4][i] +
                                           s * (r[5][i] + s1 * (r[6][i] + s * r[7][i]))))));
        }
    }

private:
    double initial_step() const {
        // Crude first guess; the controller adapts within a couple of steps.
        double ynorm = 0.0, fnorm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            ynorm = std::max(ynorm, std::abs(y_[i]));
            fnorm = std::max(fnorm, std::abs(k1_[i]));
        }
        const double h = 0.01 * (ynorm + 1.0) / (fnorm + 1e-30);
        return std::min(std::max(h, 1e-10), 1.0);
    }

    Rhs rhs_;
    double tol_;
    double t_ = 0.0, t_prev_ = 0.0, h_ = 0.0;
    State y_{};
    State k1_{};  // derivative at t_ (first stage of the next step)
    State scale_{};
    std::array<State, 8> cont_{};
};

template <std::size_t N>
bool Dop853<N>::take_step() {
    using namespace dop853_detail;
    State k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, k13, yt;
    const double facmin = 0.333, facmax = 6.0, safety = 0.9;

    while (true) {
        if (!(std::abs(h_) > std::abs(t_) * std::numeric_limits<double>::epsilon() * 16.0) ||
            !std::isfinite(h_))
            return false;
        const double h = h_;
        const auto& k1 = k1_;
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a21 * k1[i]);
        rhs_(t_ + c2 * h, yt.data(), k2.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs_(t_ + c3 * h, yt.data(), k3.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a41 * k1[i] + a43 * k3[i]);
        rhs_(t_ + c4 * h, yt.data(), k4.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a51 * k1[i] + a53 * k3[i] + a54 * k4[i]);
        rhs_(t_ + c5 * h, yt.data(), k5.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a61 * k1[i] + a64 * k4[i] + a65 * k5[i]);
        rhs_(t_ + c6 * h, yt.data(), k6.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a71 * k1[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        rhs_(t_ + c7 * h, yt.data(), k7.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] +
                    h * (a81 * k1[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
        rhs_(t_ + c8 * h, yt.data(), k8.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a91 * k1[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] +
                                 a97 * k7[i] + a98 * k8[i]);
        rhs_(t_ + c9 * h, yt.data(), k9.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a101 * k1[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] +
                                 a107 * k7[i] + a108 * k8[i] + a109 * k9[i]);
        rhs_(t_ + c10 * h, yt.data(), k10.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a111 * k1[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] +
                                 a117 * k7[i] + a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
        rhs_(t_ + c11 * h, yt.data(), k11.data());
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a121 * k1[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] +
                                 a127 * k7[i] + a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] +
                                 a1211 * k11[i]);
        rhs_(t_ + h, yt.data(), k12.data());
        for (std::size_t i = 0; i < N; ++i) {
            k13[i] = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                     b10 * k10[i] + b11 * k11[i] + b12 * k12[i];
            yt[i] = y_[i] + h * k13[i];
        }

        // Combined 5th/3rd-order error estimate, weighted per component.
        double err5 = 0.0, err3 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = tol_ * (scale_[i] + std::max(std::abs(y_[i]), std::abs(yt[i])));
            const double e3 = (k13[i] - bhh1 * k1[i] - bhh2 * k9[i] - bhh3 * k12[i]) / sk;
            const double e5 = (er1 * k1[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] +
                               er9 * k9[i] + er10 * k10[i] + er11 * k11[i] + er12 * k12[i]) /
                              sk;
            err3 += e3 * e3;
            err5 += e5 * e5;
        }
        const double den = std::sqrt(static_cast<double>(N) * (err5 + 0.01 * err3));
        double err = 0.0;
        if (den != 0.0)  // NaN den falls through and is caught below
            err = std::abs(h) * err5 / den;

        if (!std::isfinite(err)) {
            h_ *= 0.1;  // nonsense values: retreat hard and retry
            continue;
        }
        const double fac = std::pow(err, 1.0 / 8.0);
        if (err <= 1.0) {
            // Accepted: build the dense-output polynomial, then advance.
            rhs_(t_ + h, yt.data(), k4.data());  // derivative at the new point
            auto& r = cont_;
            for (std::size_t i = 0; i < N; ++i) {
                r[0][i] = y_[i];
                const double ydiff = yt[i] - y_[i];
                r[1][i] = ydiff;
                const double bspl = h * k1[i] - ydiff;
                r[2][i] = bspl;
                r[3][i] = ydiff - h * k4[i] - bspl;
                r[4][i] = h * (d41 * k1[i] + d46 * k6[i] + d47 * k7[i] + d48 * k8[i] +
                               d49 * k9[i] + d410 * k10[i] + d411 * k11[i] + d412 * k12[i] +
                               d413 * k4[i]);
                r[5][i] = h * (d51 * k1[i] + d56 * k6[i] + d57 * k7[i] + d58 * k8[i] +
                               d59 * k9[i] + d510 * k10[i] + d511 * k11[i] + d512 * k12[i] +
                               d513 * k4[i]);
                r[6][i] = h * (d61 * k1[i] + d66 * k6[i] + d67 * k7[i] + d68 * k8[i] +
                               d69 * k9[i] + d610 * k10[i] + d611 * k11[i] + d612 * k12[i] +
                               d613 * k4[i]);
                r[7][i] = h * (d71 * k1[i] + d76 * k6[i] + d77 * k7[i] + d78 * k8[i] +
                               d79 * k9[i] + d710 * k10[i] + d711 * k11[i]);
            }
            t_prev_ = t_;
            t_ += h;
            y_ = yt;
            k1_ = k4;
            h_ = h * std::min(facmax, std::max(facmin, safety / fac));
            return true;
        }
        h_ = h * std::max(facmin, safety / fac);
    }
}

}  // namespace relmass::ode
