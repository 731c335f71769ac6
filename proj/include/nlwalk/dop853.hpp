#ifndef NLWALK_DOP853_HPP
#define NLWALK_DOP853_HPP

// Adaptive eighth-order Dormand-Prince integrator with seventh-order dense
// output, after Hairer & Wanner's DOP853. Works on any Eigen column vector,
// real or complex; the error norm uses component magnitudes.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "nlwalk/errors.hpp"

namespace nlwalk {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.01;
  double t_max = 20.0;
  double sample_dt = 0.01;
  std::int64_t max_steps = 50'000'000;

  /// Throws DomainError unless all fields are positive and sample_dt <= t_max.
  void check() const;
};

/// Dense interpolant of one accepted step on [t0, t0 + h].
template <typename Vector>
class DenseSegment {
public:
  double t0() const { return t0_; }
  double t1() const { return t0_ + h_; }

  Vector operator()(double t) const {
    const double s = (t - t0_) / h_;
    const double s1 = 1.0 - s;
    return rc_[0] +
           s * (rc_[1] +
                s1 * (rc_[2] +
                      s * (rc_[3] +
                           s1 * (rc_[4] + s * (rc_[5] + s1 * (rc_[6] + s * rc_[7]))))));
  }

private:
  template <typename, typename>
  friend class Dop853;
  double t0_ = 0.0;
  double h_ = 0.0;
  std::array<Vector, 8> rc_;
};

template <typename Vector, typename Rhs>
class Dop853 {
public:
  using RealScalar = typename Eigen::NumTraits<typename Vector::Scalar>::Real;

  Dop853(Rhs rhs, const IntegratorConfig& config, double t0, Vector y0)
      : rhs_(std::move(rhs)), cfg_(config), t_(t0), y_(std::move(y0)) {
    k1_ = rhs_(t_, y_);
    h_ = initial_step();
  }

  double time() const { return t_; }
  const Vector& state() const { return y_; }
  const Vector& derivative() const { return k1_; }
  std::int64_t accepted() const { return accepted_; }
  std::int64_t rejected() const { return rejected_; }

  /// Takes one accepted step, never past t_end, and returns its interpolant.
  const DenseSegment<Vector>& step(double t_end) {
    constexpr double safe = 0.9, facc1 = 3.0, facc2 = 1.0 / 6.0, expo1 = 1.0 / 8.0;
    bool reject = false;
    for (;;) {
      if (accepted_ + rejected_ >= cfg_.max_steps)
        throw NumericalError("DOP853: maximum number of steps exceeded");
      if (0.1 * std::abs(h_) <= std::abs(t_) * 2.3e-16)
        throw NumericalError("DOP853: step size underflow");
      double h = std::min(h_, cfg_.max_step);
      bool last = false;
      if (t_ + 1.01 * h >= t_end) {
        h = t_end - t_;
        last = true;
      }
      const double err = attempt(h);
      const double fac11 = std::pow(err, expo1);
      double hnew = h / std::max(facc2, std::min(facc1, fac11 / safe));
      if (err <= 1.0) {
        ++accepted_;
        accept(h);
        if (last) hnew = std::max(hnew, h_);
        hnew = std::min(hnew, cfg_.max_step);
        if (reject) hnew = std::min(hnew, h);
        h_ = hnew;
        return segment_;
      }
      ++rejected_;
      reject = true;
      h_ = h / std::min(facc1, fac11 / safe);
    }
  }

private:
  static RealScalar mag(const typename Vector::Scalar& v) {
    using std::abs;
    return abs(v);
  }

  double initial_step() {
    const Eigen::Index n = y_.size();
    double dnf = 0.0, dny = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sk = cfg_.abs_tol + cfg_.rel_tol * mag(y_(i));
      dnf += std::pow(mag(k1_(i)) / sk, 2);
      dny += std::pow(mag(y_(i)) / sk, 2);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, cfg_.max_step);
    const Vector y1 = y_ + h * k1_;
    const Vector f1 = rhs_(t_ + h, y1);
    double der2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      der2 += std::pow(mag(f1(i) - k1_(i)) / (cfg_.abs_tol + cfg_.rel_tol * mag(y_(i))), 2);
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.125);
    return std::min({100.0 * h, h1, cfg_.max_step});
  }

  // Computes the twelve stages for step size h, leaving the proposed state in
  // ynew_ and returning the scaled error estimate.
  double attempt(double h) {
    constexpr double c2 = 0.526001519587677318785587544488E-01,
                     c3 = 0.789002279381515978178381316732E-01,
                     c4 = 0.118350341907227396726757197510E+00,
                     c5 = 0.281649658092772603273242802490E+00,
                     c6 = 0.333333333333333333333333333333E+00, c7 = 0.25E+00,
                     c8 = 0.307692307692307692307692307692E+00,
                     c9 = 0.651282051282051282051282051282E+00, c10 = 0.6E+00,
                     c11 = 0.857142857142857142857142857142E+00;
    constexpr double b1 = 5.42937341165687622380535766363E-2,
                     b6 = 4.45031289275240888144113950566E0,
                     b7 = 1.89151789931450038304281599044E0,
                     b8 = -5.8012039600105847814672114227E0,
                     b9 = 3.1116436695781989440891606237E-1,
                     b10 = -1.52160949662516078556178806805E-1,
                     b11 = 2.01365400804030348374776537501E-1,
                     b12 = 4.47106157277725905176885569043E-2;
    constexpr double a21 = 5.26001519587677318785587544488E-2,
                     a31 = 1.97250569845378994544595329183E-2,
                     a32 = 5.91751709536136983633785987549E-2,
                     a41 = 2.95875854768068491816892993775E-2,
                     a43 = 8.87627564304205475450678981324E-2,
                     a51 = 2.41365134159266685502369798665E-1,
                     a53 = -8.84549479328286085344864962717E-1,
                     a54 = 9.24834003261792003115737966543E-1,
                     a61 = 3.7037037037037037037037037037E-2,
                     a64 = 1.70828608729473871279604482173E-1,
                     a65 = 1.25467687566822425016691814123E-1, a71 = 3.7109375E-2,
                     a74 = 1.70252211019544039314978060272E-1,
                     a75 = 6.02165389804559606850219397283E-2, a76 = -1.7578125E-2;
    constexpr double a81 = 3.70920001185047927108779319836E-2,
                     a84 = 1.70383925712239993810214054705E-1,
                     a85 = 1.07262030446373284651809199168E-1,
                     a86 = -1.53194377486244017527936158236E-2,
                     a87 = 8.27378916381402288758473766002E-3,
                     a91 = 6.24110958716075717114429577812E-1,
                     a94 = -3.36089262944694129406857109825E0,
                     a95 = -8.68219346841726006818189891453E-1,
                     a96 = 2.75920996994467083049415600797E1,
                     a97 = 2.01540675504778934086186788979E1,
                     a98 = -4.34898841810699588477366255144E1,
                     a101 = 4.77662536438264365890433908527E-1,
                     a104 = -2.48811461997166764192642586468E0,
                     a105 = -5.90290826836842996371446475743E-1,
                     a106 = 2.12300514481811942347288949897E1,
                     a107 = 1.52792336328824235832596922938E1,
                     a108 = -3.32882109689848629194453265587E1,
                     a109 = -2.03312017085086261358222928593E-2;
    constexpr double a111 = -9.3714243008598732571704021658E-1,
                     a114 = 5.18637242884406370830023853209E0,
                     a115 = 1.09143734899672957818500254654E0,
                     a116 = -8.14978701074692612513997267357E0,
                     a117 = -1.85200656599969598641566180701E1,
                     a118 = 2.27394870993505042818970056734E1,
                     a119 = 2.49360555267965238987089396762E0,
                     a1110 = -3.0467644718982195003823669022E0,
                     a121 = 2.27331014751653820792359768449E0,
                     a124 = -1.05344954667372501984066689879E1,
                     a125 = -2.00087205822486249909675718444E0,
                     a126 = -1.79589318631187989172765950534E1,
                     a127 = 2.79488845294199600508499808837E1,
                     a128 = -2.85899827713502369474065508674E0,
                     a129 = -8.87285693353062954433549289258E0,
                     a1210 = 1.23605671757943030647266201528E1,
                     a1211 = 6.43392746015763530355970484046E-1;
    constexpr double bhh1 = 0.244094488188976377952755905512E+00,
                     bhh2 = 0.733846688281611857341361741547E+00,
                     bhh3 = 0.220588235294117647058823529412E-01;
    constexpr double er1 = 0.1312004499419488073250102996E-01,
                     er6 = -0.1225156446376204440720569753E+01,
                     er7 = -0.4957589496572501915214079952E+00,
                     er8 = 0.1664377182454986536961530415E+01,
                     er9 = -0.3503288487499736816886487290E+00,
                     er10 = 0.3341791187130174790297318841E+00,
                     er11 = 0.8192320648511571246570742613E-01,
                     er12 = -0.2235530786388629525884427845E-01;

    auto& s = stages_;
    const Vector& y = y_;
    s[1] = rhs_(t_ + c2 * h, y + h * (a21 * k1_));
    s[2] = rhs_(t_ + c3 * h, y + h * (a31 * k1_ + a32 * s[1]));
    s[3] = rhs_(t_ + c4 * h, y + h * (a41 * k1_ + a43 * s[2]));
    s[4] = rhs_(t_ + c5 * h, y + h * (a51 * k1_ + a53 * s[2] + a54 * s[3]));
    s[5] = rhs_(t_ + c6 * h, y + h * (a61 * k1_ + a64 * s[3] + a65 * s[4]));
    s[6] = rhs_(t_ + c7 * h, y + h * (a71 * k1_ + a74 * s[3] + a75 * s[4] + a76 * s[5]));
    s[7] = rhs_(t_ + c8 * h,
                y + h * (a81 * k1_ + a84 * s[3] + a85 * s[4] + a86 * s[5] + a87 * s[6]));
    s[8] = rhs_(t_ + c9 * h, y + h * (a91 * k1_ + a94 * s[3] + a95 * s[4] + a96 * s[5] +
                                      a97 * s[6] + a98 * s[7]));
    s[9] = rhs_(t_ + c10 * h, y + h * (a101 * k1_ + a104 * s[3] + a105 * s[4] + a106 * s[5] +
                                       a107 * s[6] + a108 * s[7] + a109 * s[8]));
    s[10] = rhs_(t_ + c11 * h, y + h * (a111 * k1_ + a114 * s[3] + a115 * s[4] + a116 * s[5] +
                                        a117 * s[6] + a118 * s[7] + a119 * s[8] + a1110 * s[9]));
    s[11] = rhs_(t_ + h, y + h * (a121 * k1_ + a124 * s[3] + a125 * s[4] + a126 * s[5] +
                                  a127 * s[6] + a128 * s[7] + a129 * s[8] + a1210 * s[9] +
                                  a1211 * s[10]));
    incr_ = b1 * k1_ + b6 * s[5] + b7 * s[6] + b8 * s[7] + b9 * s[8] + b10 * s[9] +
            b11 * s[10] + b12 * s[11];
    ynew_ = y + h * incr_;

    const Eigen::Index n = y.size();
    double err = 0.0, err2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sk =
          1.0 / (cfg_.abs_tol + cfg_.rel_tol * std::max<double>(mag(y(i)), mag(ynew_(i))));
      const double e2 =
          mag(incr_(i) - bhh1 * k1_(i) - bhh2 * s[8](i) - bhh3 * s[11](i)) * sk;
      const double e = mag(er1 * k1_(i) + er6 * s[5](i) + er7 * s[6](i) + er8 * s[7](i) +
                           er9 * s[8](i) + er10 * s[9](i) + er11 * s[10](i) +
                           er12 * s[11](i)) *
                       sk;
      err2 += e2 * e2;
      err += e * e;
    }
    const double deno = err + 0.01 * err2;
    return std::abs(h) * err *
           std::sqrt(1.0 / (deno <= 0.0 ? static_cast<double>(n) : deno * static_cast<double>(n)));
  }

  void accept(double h) {
    constexpr double c14 = 0.1E+00, c15 = 0.2E+00, c16 = 0.777777777777777777777777777778E+00;
    constexpr double a141 = 5.61675022830479523392909219681E-2,
                     a147 = 2.53500210216624811088794765333E-1,
                     a148 = -2.46239037470802489917441475441E-1,
                     a149 = -1.24191423263816360469010140626E-1,
                     a1410 = 1.5329179827876569731206322685E-1,
                     a1411 = 8.20105229563468988491666602057E-3,
                     a1412 = 7.56789766054569976138603589584E-3, a1413 = -8.298E-3;
    constexpr double a151 = 3.18346481635021405060768473261E-2,
                     a156 = 2.83009096723667755288322961402E-2,
                     a157 = 5.35419883074385676223797384372E-2,
                     a158 = -5.49237485713909884646569340306E-2,
                     a1511 = -1.08347328697249322858509316994E-4,
                     a1512 = 3.82571090835658412954920192323E-4,
                     a1513 = -3.40465008687404560802977114492E-4,
                     a1514 = 1.41312443674632500278074618366E-1;
    constexpr double a161 = -4.28896301583791923408573538692E-1,
                     a166 = -4.69762141536116384314449447206E0,
                     a167 = 7.68342119606259904184240953878E0,
                     a168 = 4.06898981839711007970213554331E0,
                     a169 = 3.56727187455281109270669543021E-1,
                     a1613 = -1.39902416515901462129418009734E-3,
                     a1614 = 2.9475147891527723389556272149E0,
                     a1615 = -9.15095847217987001081870187138E0;
    constexpr double d41 = -0.84289382761090128651353491142E+01,
                     d46 = 0.56671495351937776962531783590E+00,
                     d47 = -0.30689499459498916912797304727E+01,
                     d48 = 0.23846676565120698287728149680E+01,
                     d49 = 0.21170345824450282767155149946E+01,
                     d410 = -0.87139158377797299206789907490E+00,
                     d411 = 0.22404374302607882758541771650E+01,
                     d412 = 0.63157877876946881815570249290E+00,
                     d413 = -0.88990336451333310820698117400E-01,
                     d414 = 0.18148505520854727256656404962E+02,
                     d415 = -0.91946323924783554000451984436E+01,
                     d416 = -0.44360363875948939664310572000E+01;
    constexpr double d51 = 0.10427508642579134603413151009E+02,
                     d56 = 0.24228349177525818288430175319E+03,
                     d57 = 0.16520045171727028198505394887E+03,
                     d58 = -0.37454675472269020279518312152E+03,
                     d59 = -0.22113666853125306036270938578E+02,
                     d510 = 0.77334326684722638389603898808E+01,
                     d511 = -0.30674084731089398182061213626E+02,
                     d512 = -0.93321305264302278729567221706E+01,
                     d513 = 0.15697238121770843886131091075E+02,
                     d514 = -0.31139403219565177677282850411E+02,
                     d515 = -0.93529243588444783865713862664E+01,
                     d516 = 0.35816841486394083752465898540E+02;
    constexpr double d61 = 0.19985053242002433820987653617E+02,
                     d66 = -0.38703730874935176555105901742E+03,
                     d67 = -0.18917813819516756882830838328E+03,
                     d68 = 0.52780815920542364900561016686E+03,
                     d69 = -0.11573902539959630126141871134E+02,
                     d610 = 0.68812326946963000169666922661E+01,
                     d611 = -0.10006050966910838403183860980E+01,
                     d612 = 0.77771377980534432092869265740E+00,
                     d613 = -0.27782057523535084065932004339E+01,
                     d614 = -0.60196695231264120758267380846E+02,
                     d615 = 0.84320405506677161018159903784E+02,
                     d616 = 0.11992291136182789328035130030E+02;
    constexpr double d71 = -0.25693933462703749003312586129E+02,
                     d76 = -0.15418974869023643374053993627E+03,
                     d77 = -0.23152937917604549567536039109E+03,
                     d78 = 0.35763911791061412378285349910E+03,
                     d79 = 0.93405324183624310003907691704E+02,
                     d710 = -0.37458323136451633156875139351E+02,
                     d711 = 0.10409964950896230045147246184E+03,
                     d712 = 0.29840293426660503123344363579E+02,
                     d713 = -0.43533456590011143754432175058E+02,
                     d714 = 0.96324553959188282948394950600E+02,
                     d715 = -0.39177261675615439165231486172E+02,
                     d716 = -0.14972683625798562581422125276E+03;

    const auto& s = stages_;
    const double tnew = t_ + h;
    const Vector fnew = rhs_(tnew, ynew_);

    const Vector s14 = rhs_(t_ + c14 * h,
                            y_ + h * (a141 * k1_ + a147 * s[6] + a148 * s[7] + a149 * s[8] +
                                      a1410 * s[9] + a1411 * s[10] + a1412 * s[11] +
                                      a1413 * fnew));
    const Vector s15 = rhs_(t_ + c15 * h,
                            y_ + h * (a151 * k1_ + a156 * s[5] + a157 * s[6] + a158 * s[7] +
                                      a1511 * s[10] + a1512 * s[11] + a1513 * fnew +
                                      a1514 * s14));
    const Vector s16 = rhs_(t_ + c16 * h,
                            y_ + h * (a161 * k1_ + a166 * s[5] + a167 * s[6] + a168 * s[7] +
                                      a169 * s[8] + a1613 * fnew + a1614 * s14 + a1615 * s15));

    auto& rc = segment_.rc_;
    const Vector ydiff = ynew_ - y_;
    const Vector bspl = h * k1_ - ydiff;
    rc[0] = y_;
    rc[1] = ydiff;
    rc[2] = bspl;
    rc[3] = ydiff - h * fnew - bspl;
    rc[4] = h * (d41 * k1_ + d46 * s[5] + d47 * s[6] + d48 * s[7] + d49 * s[8] + d410 * s[9] +
                 d411 * s[10] + d412 * s[11] + d413 * fnew + d414 * s14 + d415 * s15 +
                 d416 * s16);
    rc[5] = h * (d51 * k1_ + d56 * s[5] + d57 * s[6] + d58 * s[7] + d59 * s[8] + d510 * s[9] +
                 d511 * s[10] + d512 * s[11] + d513 * fnew + d514 * s14 + d515 * s15 +
                 d516 * s16);
    rc[6] = h * (d61 * k1_ + d66 * s[5] + d67 * s[6] + d68 * s[7] + d69 * s[8] + d610 * s[9] +
                 d611 * s[10] + d612 * s[11] + d613 * fnew + d614 * s14 + d615 * s15 +
                 d616 * s16);
    rc[7] = h * (d71 * k1_ + d76 * s[5] + d77 * s[6] + d78 * s[7] + d79 * s[8] + d710 * s[9] +
                 d711 * s[10] + d712 * s[11] + d713 * fnew + d714 * s14 + d715 * s15 +
                 d716 * s16);
    segment_.t0_ = t_;
    segment_.h_ = h;

    y_ = ynew_;
    k1_ = fnew;
    t_ = tnew;
  }

  Rhs rhs_;
  IntegratorConfig cfg_;
  double t_;
  double h_ = 0.0;
  Vector y_;
  Vector k1_;
  Vector ynew_;
  Vector incr_;
  std::array<Vector, 12> stages_;
  DenseSegment<Vector> segment_;
  std::int64_t accepted_ = 0;
  std::int64_t rejected_ = 0;
};

template <typename Vector, typename Rhs>
Dop853(Rhs, const IntegratorConfig&, double, Vector) -> Dop853<Vector, Rhs>;

}  // namespace nlwalk

#endif  // NLWALK_DOP853_HPP
