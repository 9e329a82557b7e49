#include "radialnet/expfeat.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "radialnet/profile.hpp"
#include "radialnet/sphere.hpp"

namespace radialnet {

nlohmann::json ExpFeatureCertificate::to_json() const {
  return {{"width", width},
          {"epsilon_target", epsilon_target},
          {"empirical_sup_error", empirical_sup_error},
          {"retries_used", retries_used},
          {"seed", seed},
          {"report", report.to_json()}};
}

std::size_t exp_network_width(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return static_cast<std::size_t>(std::ceil(36.0 / (epsilon * epsilon) - 1e-9));
}

DepthTwoNetwork sample_exp_network(int d, std::size_t width, SeededRng& rng) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (width == 0) throw std::invalid_argument("width must be positive");
  DepthTwoNetwork net;
  net.dim = d;
  net.activation = Activation::Exp;
  net.hidden.reserve(width);
  const double v = 1.0 / static_cast<double>(width);
  for (std::size_t i = 0; i < width; ++i) net.add_unit(sample_unit_sphere(d, rng), 0.0, v);
  return net;
}

ExpBuildResult build_exp_network(int d, double epsilon, SeededRng& rng, int max_retries,
                                 const VerifyBudget& budget) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (max_retries < 1) throw std::invalid_argument("max_retries must be >= 1");
  const std::size_t n = exp_network_width(epsilon);
  const RadialProfile target = fd_profile(d);

  ExpBuildResult best;
  bool have_best = false;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    const std::uint64_t draw_seed = rng.next_u64();
    SeededRng draw(draw_seed);
    DepthTwoNetwork net = sample_exp_network(d, n, draw);
    const std::uint64_t verify_seed = derive_seed(draw_seed, 0x7665726966ULL);
    ErrorReport rep = estimate_sup_error(net, target, budget, verify_seed);

    ExpFeatureCertificate cert;
    cert.width = n;
    cert.epsilon_target = epsilon;
    cert.empirical_sup_error = rep.sup_estimate;
    cert.retries_used = attempt;
    cert.seed = draw_seed;
    cert.report = rep;
    net.meta = {{"epsilon", epsilon}, {"target", "fd"}, {"d", d}, {"seed", draw_seed}};

    if (rep.sup_estimate <= epsilon) return {std::move(net), std::move(cert)};
    if (!have_best || rep.sup_estimate < best.certificate.empirical_sup_error) {
      best = {std::move(net), std::move(cert)};
      have_best = true;
    }
  }
  std::ostringstream os;
  os << "exp-feature network: " << max_retries << " draws, best empirical sup error "
     << best.certificate.empirical_sup_error << " > epsilon " << epsilon;
  throw RetriesExhausted(os.str(), best);
}

}  // namespace radialnet
