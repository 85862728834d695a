#include "dp3/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dp3/dynamics.hpp"
#include "dp3/origin_series.hpp"

namespace dp3 {
namespace {

// Dormand-Prince 8(5,3) coefficients, from Hairer's DOP853.
namespace dop {
constexpr double c2 = 0.526001519587677318785587544488e-01;
constexpr double c3 = 0.789002279381515978178381316732e-01;
constexpr double c4 = 0.118350341907227396726757197510e+00;
constexpr double c5 = 0.281649658092772603273242802490e+00;
constexpr double c6 = 0.333333333333333333333333333333e+00;
constexpr double c7 = 0.25e+00;
constexpr double c8 = 0.307692307692307692307692307692e+00;
constexpr double c9 = 0.651282051282051282051282051282e+00;
constexpr double c10 = 0.6e+00;
constexpr double c11 = 0.857142857142857142857142857142e+00;
constexpr double c14 = 0.1e+00;
constexpr double c15 = 0.2e+00;
constexpr double c16 = 0.777777777777777777777777777778e+00;

constexpr double a21 = 5.26001519587677318785587544488e-2;
constexpr double a31 = 1.97250569845378994544595329183e-2;
constexpr double a32 = 5.91751709536136983633785987549e-2;
constexpr double a41 = 2.95875854768068491816892993775e-2;
constexpr double a43 = 8.87627564304205475450678981324e-2;
constexpr double a51 = 2.41365134159266685502369798665e-1;
constexpr double a53 = -8.84549479328286085344864962717e-1;
constexpr double a54 = 9.24834003261792003115737966543e-1;
constexpr double a61 = 3.7037037037037037037037037037e-2;
constexpr double a64 = 1.70828608729473871279604482173e-1;
constexpr double a65 = 1.25467687566822425016691814123e-1;
constexpr double a71 = 3.7109375e-2;
constexpr double a74 = 1.70252211019544039314978060272e-1;
constexpr double a75 = 6.02165389804559606850219397283e-2;
constexpr double a76 = -1.7578125e-2;
constexpr double a81 = 3.70920001185047927108779319836e-2;
constexpr double a84 = 1.70383925712239993810214054705e-1;
constexpr double a85 = 1.07262030446373284651809199168e-1;
constexpr double a86 = -1.53194377486244017527936158236e-2;
constexpr double a87 = 8.27378916381402288758473766002e-3;
constexpr double a91 = 6.24110958716075717114429577812e-1;
constexpr double a94 = -3.36089262944694129406857109825e0;
constexpr double a95 = -8.68219346841726006818189891453e-1;
constexpr double a96 = 2.75920996994467083049415600797e1;
constexpr double a97 = 2.01540675504778934086186788979e1;
constexpr double a98 = -4.34898841810699588477366255144e1;
constexpr double a101 = 4.77662536438264365890433908527e-1;
constexpr double a104 = -2.48811461997166764192642586468e0;
constexpr double a105 = -5.90290826836842996371446475743e-1;
constexpr double a106 = 2.12300514481811942347288949897e1;
constexpr double a107 = 1.52792336328824235832596922938e1;
constexpr double a108 = -3.32882109689848629194453265587e1;
constexpr double a109 = -2.03312017085086261358222928593e-2;
constexpr double a111 = -9.3714243008598732571704021658e-1;
constexpr double a114 = 5.18637242884406370830023853209e0;
constexpr double a115 = 1.09143734899672957818500254654e0;
constexpr double a116 = -8.14978701074692612513997267357e0;
constexpr double a117 = -1.85200656599969598641566180701e1;
constexpr double a118 = 2.27394870993505042818970056734e1;
constexpr double a119 = 2.49360555267965238987089396762e0;
constexpr double a1110 = -3.0467644718982195003823669022e0;
constexpr double a121 = 2.27331014751653820792359768449e0;
constexpr double a124 = -1.05344954667372501984066689879e1;
constexpr double a125 = -2.00087205822486249909675718444e0;
constexpr double a126 = -1.79589318631187989172765950534e1;
constexpr double a127 = 2.79488845294199600508499808837e1;
constexpr double a128 = -2.85899827713502369474065508674e0;
constexpr double a129 = -8.87285693353062954433549289258e0;
constexpr double a1210 = 1.23605671757943030647266201528e1;
constexpr double a1211 = 6.43392746015763530355970484046e-1;

constexpr double a141 = 5.61675022830479523392909219681e-2;
constexpr double a147 = 2.53500210216624811088794765333e-1;
constexpr double a148 = -2.46239037470802489917441475441e-1;
constexpr double a149 = -1.24191423263816360469010140626e-1;
constexpr double a1410 = 1.5329179827876569731206322685e-1;
constexpr double a1411 = 8.20105229563468988491666602057e-3;
constexpr double a1412 = 7.56789766054569976138603589584e-3;
constexpr double a1413 = -8.298e-3;
constexpr double a151 = 3.18346481635021405060768473261e-2;
constexpr double a156 = 2.83009096723667755288322961402e-2;
constexpr double a157 = 5.35419883074385676223797384372e-2;
constexpr double a158 = -5.49237485713909884646569340306e-2;
constexpr double a1511 = -1.08347328697249322858509316994e-4;
constexpr double a1512 = 3.82571090835658412954920192323e-4;
constexpr double a1513 = -3.40465008687404560802977114492e-4;
constexpr double a1514 = 1.41312443674632500278074618366e-1;
constexpr double a161 = -4.28896301583791923408573538692e-1;
constexpr double a166 = -4.69762141536116384314449447206e0;
constexpr double a167 = 7.68342119606259904184240953878e0;
constexpr double a168 = 4.06898981839711007970213554331e0;
constexpr double a169 = 3.56727187455281109270669543021e-1;
constexpr double a1613 = -1.39902416515901462129418009734e-3;
constexpr double a1614 = 2.9475147891527723389556272149e0;
constexpr double a1615 = -9.15095847217987001081870187138e0;

constexpr double b1 = 5.42937341165687622380535766363e-2;
constexpr double b6 = 4.45031289275240888144113950566e0;
constexpr double b7 = 1.89151789931450038304281599044e0;
constexpr double b8 = -5.8012039600105847814672114227e0;
constexpr double b9 = 3.1116436695781989440891606237e-1;
constexpr double b10 = -1.52160949662516078556178806805e-1;
constexpr double b11 = 2.01365400804030348374776537501e-1;
constexpr double b12 = 4.47106157277725905176885569043e-2;

constexpr double bhh1 = 0.244094488188976377952755905512e+00;
constexpr double bhh2 = 0.733846688281611857341361741547e+00;
constexpr double bhh3 = 0.220588235294117647058823529412e-01;

constexpr double er1 = 0.1312004499419488073250102996e-01;
constexpr double er6 = -0.1225156446376204440720569753e+01;
constexpr double er7 = -0.4957589496572501915214079952e+00;
constexpr double er8 = 0.1664377182454986536961530415e+01;
constexpr double er9 = -0.3503288487499736816886487290e+00;
constexpr double er10 = 0.3341791187130174790297318841e+00;
constexpr double er11 = 0.8192320648511571246570742613e-01;
constexpr double er12 = -0.2235530786388629525884427845e-01;

constexpr double d41 = -0.84289382761090128651353491142e+01;
constexpr double d46 = 0.56671495351937776962531783590e+00;
constexpr double d47 = -0.30689499459498916912797304727e+01;
constexpr double d48 = 0.23846676565120698287728149680e+01;
constexpr double d49 = 0.21170345824450282767155149946e+01;
constexpr double d410 = -0.87139158377797299206789907490e+00;
constexpr double d411 = 0.22404374302607882758541771650e+01;
constexpr double d412 = 0.63157877876946881815570249290e+00;
constexpr double d413 = -0.88990336451333310820698117400e-01;
constexpr double d414 = 0.18148505520854727256656404962e+02;
constexpr double d415 = -0.91946323924783554000451984436e+01;
constexpr double d416 = -0.44360363875948939664310572000e+01;
constexpr double d51 = 0.10427508642579134603413151009e+02;
constexpr double d56 = 0.24228349177525818288430175319e+03;
constexpr double d57 = 0.16520045171727028198505394887e+03;
constexpr double d58 = -0.37454675472269020279518312152e+03;
constexpr double d59 = -0.22113666853125306036270938578e+02;
constexpr double d510 = 0.77334326684722638389603898808e+01;
constexpr double d511 = -0.30674084731089398182061213626e+02;
constexpr double d512 = -0.93321305264302278729567221706e+01;
constexpr double d513 = 0.15697238121770843886131091075e+02;
constexpr double d514 = -0.31139403219565177677282850411e+02;
constexpr double d515 = -0.93529243588444783865713862664e+01;
constexpr double d516 = 0.35816841486394083752465898540e+02;
constexpr double d61 = 0.19985053242002433820987653617e+02;
constexpr double d66 = -0.38703730874935176555105901742e+03;
constexpr double d67 = -0.18917813819516756882830838328e+03;
constexpr double d68 = 0.52780815920542364900561016686e+03;
constexpr double d69 = -0.11573902539959630126141871134e+02;
constexpr double d610 = 0.68812326946963000169666922661e+01;
constexpr double d611 = -0.10006050966910838403183860980e+01;
constexpr double d612 = 0.77771377980534432092869265740e+00;
constexpr double d613 = -0.27782057523535084065932004339e+01;
constexpr double d614 = -0.60196695231264120758267380846e+02;
constexpr double d615 = 0.84320405506677161018159903784e+02;
constexpr double d616 = 0.11992291136182789328035130030e+02;
constexpr double d71 = -0.25693933462703749003312586129e+02;
constexpr double d76 = -0.15418974869023643374053993627e+03;
constexpr double d77 = -0.23152937917604549567536039109e+03;
constexpr double d78 = 0.35763911791061412378285349910e+03;
constexpr double d79 = 0.93405324183624310003907691704e+02;
constexpr double d710 = -0.37458323136451633156875139351e+02;
constexpr double d711 = 0.10409964950896230045147246184e+03;
constexpr double d712 = 0.29840293426660503123344363579e+02;
constexpr double d713 = -0.43533456590011143754432175058e+02;
constexpr double d714 = 0.96324553959188282948394950600e+02;
constexpr double d715 = -0.39177261675615439165231486172e+02;
constexpr double d716 = -0.14972683625798562581422125276e+03;
}  // namespace dop

constexpr double kUround = 2.3e-16;
constexpr double kSafe = 0.9;
constexpr double kFacMin = 1.0 / 3.0;  // largest shrink is a factor 3
constexpr double kFacMax = 6.0;

bool finite_state(const State& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

// y + h * sum_j w_j k_j over the given stages.
template <std::size_t M>
State combine(const State& y, double h, const std::array<double, M>& w,
              const std::array<const State*, M>& k) {
  State r = y;
  for (std::size_t i = 0; i < kStateSize; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < M; ++j) acc += w[j] * (*k[j])[i];
    r[i] += h * acc;
  }
  return r;
}

class Dop853 {
 public:
  Dop853(const Params& p, const IntegratorConfig& cfg) : p_(p), cfg_(cfg) {}

  Trajectory run(const AugmentedState& seed);

 private:
  State f(double tau, const State& y) {
    ++diag_.rhs_evaluations;
    if (!(y[0] > 0.0) || !finite_state(y)) {
      State bad;
      bad.fill(std::numeric_limits<double>::quiet_NaN());
      return bad;
    }
    return augmented_rhs(p_, tau, y);
  }

  double max_step_at(double tau) const {
    return std::min(cfg_.max_step, 0.25 * std::cbrt(tau));
  }

  double initial_step(double tau, const State& y, const State& f0);

  const Params& p_;
  const IntegratorConfig& cfg_;
  Diagnostics diag_;
};

double Dop853::initial_step(double tau, const State& y, const State& f0) {
  double dnf = 0.0;
  double dny = 0.0;
  for (std::size_t i = 0; i < kStateSize; ++i) {
    const double sk = cfg_.atol + cfg_.rtol * std::abs(y[i]);
    dnf += (f0[i] / sk) * (f0[i] / sk);
    dny += (y[i] / sk) * (y[i] / sk);
  }
  const double hmax = max_step_at(tau);
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
  h = std::min(h, hmax);
  State y1 = y;
  for (std::size_t i = 0; i < kStateSize; ++i) y1[i] += h * f0[i];
  const State f1 = f(tau + h, y1);
  double der2 = 0.0;
  for (std::size_t i = 0; i < kStateSize; ++i) {
    const double sk = cfg_.atol + cfg_.rtol * std::abs(y[i]);
    der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
  }
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 = (!std::isfinite(der12))
                        ? 1e-3 * h
                        : (der12 <= 1e-15 ? std::max(1e-6, h * 1e-3)
                                          : std::pow(0.01 / der12, 1.0 / 8.0));
  return std::min({100.0 * h, h1, hmax});
}

Trajectory Dop853::run(const AugmentedState& seed) {
  using namespace dop;
  double tau = seed.tau();
  const double tau_end = cfg_.tau_max;
  State y = to_state(seed);
  State comp{};  // Kahan compensation of y

  std::vector<DenseSegment> segments;
  std::vector<AugmentedState> samples;
  samples.push_back(seed);

  const double stride = cfg_.dense_output_stride;
  auto next_grid = static_cast<std::size_t>(std::floor(tau / stride)) + 1;

  State k1 = f(tau, y);
  if (!finite_state(k1)) fail(ErrorCode::InvalidState, "seed state is not admissible");
  double h = initial_step(tau, y, k1);
  bool reject = false;

  while (tau < tau_end) {
    if (diag_.accepted_steps + diag_.rejected_steps >= cfg_.max_steps) {
      fail(ErrorCode::StepUnderflow, "step budget exhausted at tau = " + std::to_string(tau));
    }
    h = std::min(h, max_step_at(tau));
    bool last = false;
    if (tau + 1.01 * h >= tau_end) {
      h = tau_end - tau;
      last = true;
    }
    if (0.1 * std::abs(h) <= std::abs(tau) * kUround) {
      fail(ErrorCode::StepUnderflow, "step size underflow at tau = " + std::to_string(tau));
    }

    const State k2 = f(tau + c2 * h, combine<1>(y, h, {a21}, {&k1}));
    const State k3 = f(tau + c3 * h, combine<2>(y, h, {a31, a32}, {&k1, &k2}));
    const State k4 = f(tau + c4 * h, combine<2>(y, h, {a41, a43}, {&k1, &k3}));
    const State k5 = f(tau + c5 * h, combine<3>(y, h, {a51, a53, a54}, {&k1, &k3, &k4}));
    const State k6 = f(tau + c6 * h, combine<3>(y, h, {a61, a64, a65}, {&k1, &k4, &k5}));
    const State k7 = f(tau + c7 * h,
                       combine<4>(y, h, {a71, a74, a75, a76}, {&k1, &k4, &k5, &k6}));
    const State k8 = f(tau + c8 * h, combine<5>(y, h, {a81, a84, a85, a86, a87},
                                                {&k1, &k4, &k5, &k6, &k7}));
    const State k9 = f(tau + c9 * h, combine<6>(y, h, {a91, a94, a95, a96, a97, a98},
                                                {&k1, &k4, &k5, &k6, &k7, &k8}));
    const State k10 =
        f(tau + c10 * h, combine<7>(y, h, {a101, a104, a105, a106, a107, a108, a109},
                                    {&k1, &k4, &k5, &k6, &k7, &k8, &k9}));
    const State k11 =
        f(tau + c11 * h,
          combine<8>(y, h, {a111, a114, a115, a116, a117, a118, a119, a1110},
                     {&k1, &k4, &k5, &k6, &k7, &k8, &k9, &k10}));
    const State k12 =
        f(tau + h,
          combine<9>(y, h, {a121, a124, a125, a126, a127, a128, a129, a1210, a1211},
                     {&k1, &k4, &k5, &k6, &k7, &k8, &k9, &k10, &k11}));

    State increment;
    State y_new;
    State comp_new = comp;
    double err = 0.0;
    double err2 = 0.0;
    for (std::size_t i = 0; i < kStateSize; ++i) {
      const double slope = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] +
                           b9 * k9[i] + b10 * k10[i] + b11 * k11[i] + b12 * k12[i];
      increment[i] = slope;
      const double corrected = h * slope - comp[i];
      y_new[i] = y[i] + corrected;
      comp_new[i] = (y_new[i] - y[i]) - corrected;
    }
    for (std::size_t i = 0; i < kStateSize; ++i) {
      const double sk = cfg_.atol + cfg_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double e3 = increment[i] - bhh1 * k1[i] - bhh2 * k9[i] - bhh3 * k12[i];
      const double e5 = er1 * k1[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] +
                        er9 * k9[i] + er10 * k10[i] + er11 * k11[i] + er12 * k12[i];
      err2 += (e3 / sk) * (e3 / sk);
      err += (e5 / sk) * (e5 / sk);
    }
    double deno = err + 0.01 * err2;
    if (deno <= 0.0) deno = 1.0;
    err = std::abs(h) * err * std::sqrt(1.0 / (static_cast<double>(kStateSize) * deno));
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();

    const double fac11 = std::isfinite(err) ? std::pow(err, 1.0 / 8.0) : 1.0 / kFacMin;
    double fac = std::clamp(fac11 / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
    double h_new = h / fac;

    if (err > 1.0) {
      h = h / std::min(1.0 / kFacMin, fac11 / kSafe);
      reject = true;
      ++diag_.rejected_steps;
      continue;
    }

    ++diag_.accepted_steps;
    const double tau_new = last ? tau_end : tau + h;
    const State k13 = f(tau_new, y_new);
    if (!(y_new[0] > 0.0)) {
      fail(ErrorCode::ZeroCrossing, "u changed sign near tau = " + std::to_string(tau_new));
    }
    if (std::abs(y_new[0]) > cfg_.pole_guard) {
      fail(ErrorCode::PoleEncountered, "|u| exceeded pole guard near tau = " + std::to_string(tau_new));
    }

    // continuous extension
    const State k14 = f(tau + c14 * h,
                        combine<8>(y, h, {a141, a147, a148, a149, a1410, a1411, a1412, a1413},
                                   {&k1, &k7, &k8, &k9, &k10, &k11, &k12, &k13}));
    const State k15 = f(tau + c15 * h,
                        combine<8>(y, h, {a151, a156, a157, a158, a1511, a1512, a1513, a1514},
                                   {&k1, &k6, &k7, &k8, &k11, &k12, &k13, &k14}));
    const State k16 = f(tau + c16 * h,
                        combine<8>(y, h, {a161, a166, a167, a168, a169, a1613, a1614, a1615},
                                   {&k1, &k6, &k7, &k8, &k9, &k13, &k14, &k15}));
    DenseSegment seg{tau, h, {}};
    for (std::size_t i = 0; i < kStateSize; ++i) {
      const double ydiff = y_new[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      seg.rc[0][i] = y[i];
      seg.rc[1][i] = ydiff;
      seg.rc[2][i] = bspl;
      seg.rc[3][i] = ydiff - h * k13[i] - bspl;
      seg.rc[4][i] = h * (d41 * k1[i] + d46 * k6[i] + d47 * k7[i] + d48 * k8[i] +
                          d49 * k9[i] + d410 * k10[i] + d411 * k11[i] + d412 * k12[i] +
                          d413 * k13[i] + d414 * k14[i] + d415 * k15[i] + d416 * k16[i]);
      seg.rc[5][i] = h * (d51 * k1[i] + d56 * k6[i] + d57 * k7[i] + d58 * k8[i] +
                          d59 * k9[i] + d510 * k10[i] + d511 * k11[i] + d512 * k12[i] +
                          d513 * k13[i] + d514 * k14[i] + d515 * k15[i] + d516 * k16[i]);
      seg.rc[6][i] = h * (d61 * k1[i] + d66 * k6[i] + d67 * k7[i] + d68 * k8[i] +
                          d69 * k9[i] + d610 * k10[i] + d611 * k11[i] + d612 * k12[i] +
                          d613 * k13[i] + d614 * k14[i] + d615 * k15[i] + d616 * k16[i]);
      seg.rc[7][i] = h * (d71 * k1[i] + d76 * k6[i] + d77 * k7[i] + d78 * k8[i] +
                          d79 * k9[i] + d710 * k10[i] + d711 * k11[i] + d712 * k12[i] +
                          d713 * k13[i] + d714 * k14[i] + d715 * k15[i] + d716 * k16[i]);
    }
    segments.push_back(seg);

    for (;;) {
      const double grid_tau = static_cast<double>(next_grid) * stride;
      if (grid_tau > tau_new || grid_tau >= tau_end) break;
      samples.push_back(to_augmented(grid_tau, seg.value(grid_tau)));
      ++next_grid;
    }

    tau = tau_new;
    y = y_new;
    comp = comp_new;
    k1 = k13;

    if (last) break;
    if (reject) h_new = std::min(h_new, h);
    reject = false;
    h = h_new;
  }
  samples.push_back(to_augmented(tau, y));

  // equation residual on the sample grid from the interpolant
  double worst = 0.0;
  for (std::size_t s = 1; s < samples.size(); ++s) {
    const double t = samples[s].tau();
    auto it = std::upper_bound(segments.begin(), segments.end(), t,
                               [](double v, const DenseSegment& sg) { return v < sg.tau_start; });
    const DenseSegment& sg = *(it == segments.begin() ? it : std::prev(it));
    const State v = sg.value(t);
    const State d = sg.derivative(t);
    const Residual r = ode_residual(p_.a(), p_.b(), p_.epsilon(), t, v[0], v[1], d[1]);
    worst = std::max(worst, r.relative());
  }
  diag_.max_residual = worst;

  return Trajectory(p_, std::move(segments), std::move(samples), diag_);
}

}  // namespace

void IntegratorConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(rtol) || !positive(atol)) {
    fail(ErrorCode::InvalidConfig, "tolerances must be positive");
  }
  if (!positive(tau0) || !std::isfinite(tau_max) || !(tau0 < tau_max)) {
    fail(ErrorCode::InvalidConfig, "need 0 < tau0 < tau_max");
  }
  if (!positive(max_step) || !positive(dense_output_stride) || !positive(pole_guard)) {
    fail(ErrorCode::InvalidConfig, "max_step, stride and pole_guard must be positive");
  }
  if (series_terms < 2) fail(ErrorCode::InvalidConfig, "series_terms must be >= 2");
}

State DenseSegment::value(double tau) const {
  const double s = (tau - tau_start) / h;
  const double s1 = 1.0 - s;
  State out;
  for (std::size_t i = 0; i < kStateSize; ++i) {
    const double conpar = rc[4][i] + s * (rc[5][i] + s1 * (rc[6][i] + s * rc[7][i]));
    out[i] = rc[0][i] + s * (rc[1][i] + s1 * (rc[2][i] + s * (rc[3][i] + s1 * conpar)));
  }
  return out;
}

State DenseSegment::derivative(double tau) const {
  const double s = (tau - tau_start) / h;
  const double s1 = 1.0 - s;
  State out;
  for (std::size_t i = 0; i < kStateSize; ++i) {
    const double f7 = rc[6][i] + s * rc[7][i];
    const double e6 = rc[5][i] + s1 * f7;
    const double d5 = rc[4][i] + s * e6;
    const double c4 = rc[3][i] + s1 * d5;
    const double b3 = rc[2][i] + s * c4;
    const double a2 = rc[1][i] + s1 * b3;
    const double df7 = rc[7][i];
    const double de6 = -f7 + s1 * df7;
    const double dd5 = e6 + s * de6;
    const double dc4 = -d5 + s1 * dd5;
    const double db3 = c4 + s * dc4;
    const double da2 = -b3 + s1 * db3;
    out[i] = (a2 + s * da2) / h;
  }
  return out;
}

Trajectory::Trajectory(Params params, std::vector<DenseSegment> segments,
                       std::vector<AugmentedState> samples, Diagnostics diagnostics)
    : params_(params),
      segments_(std::move(segments)),
      samples_(std::move(samples)),
      diagnostics_(diagnostics) {}

const DenseSegment& Trajectory::segment_for(double tau) const {
  if (segments_.empty() || !(tau >= tau_start()) || !(tau <= tau_end())) {
    fail(ErrorCode::OutOfRange, "tau = " + std::to_string(tau) + " outside the integrated interval");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), tau,
                             [](double v, const DenseSegment& s) { return v < s.tau_start; });
  return *(it == segments_.begin() ? it : std::prev(it));
}

State Trajectory::state_at(double tau) const {
  if (tau == tau_start()) return to_state(samples_.front());
  if (tau == tau_end()) return to_state(samples_.back());
  return segment_for(tau).value(tau);
}

State Trajectory::derivative_at(double tau) const { return segment_for(tau).derivative(tau); }

State augmented_rhs(const Params& p, double tau, const State& y) {
  const double a = p.a_real();
  const double b = p.b();
  const double u = y[0];
  const double du = y[1];
  const double ddu = second_derivative(a, b, p.eps(), tau, u, du);
  const Complex f =
      backlund_plus_expr<Complex>(p.a(), b, p.eps(), tau, u, du) * u;
  return {du, ddu, 2.0 * a / tau + b / u, f.real() / tau, f.imag() / tau};
}

AugmentedState to_augmented(double tau, const State& y) {
  return {SolutionPoint(tau, y[0], y[1]), y[2], ComplexValue(y[3], y[4])};
}

State to_state(const AugmentedState& s) {
  return {s.point.u(), s.point.du(), s.i1, s.i2.re(), s.i2.im()};
}

AugmentedState series_seed(const Params& p, const IntegratorConfig& cfg) {
  require_special(p, "series_seed");
  cfg.validate();
  const OriginSeries series = build_series(p, cfg.series_terms);
  const double tau = choose_seed_tau(series, cfg.tau0);
  const SeriesPoint pt = eval_u(series, tau);
  const SeriesIntegrals in = eval_integrals(series, tau);
  return {SolutionPoint(tau, pt.u, pt.du), in.i1, in.i2};
}

Trajectory integrate(const Params& p, const IntegratorConfig& cfg) {
  return integrate_from(p, series_seed(p, cfg), cfg);
}

Trajectory integrate_from(const Params& p, const AugmentedState& seed,
                          const IntegratorConfig& cfg) {
  require_special(p, "integrate");
  IntegratorConfig checked = cfg;
  checked.tau0 = std::min(cfg.tau0, seed.tau());
  checked.validate();
  if (!(seed.tau() < cfg.tau_max)) {
    fail(ErrorCode::InvalidConfig, "seed must lie before tau_max");
  }
  Dop853 stepper(p, checked);
  return stepper.run(seed);
}

AugmentedState sample_at(const Trajectory& traj, double tau) {
  return to_augmented(tau, traj.state_at(tau));
}

}  // namespace dp3
