#include "seqinfo/measure.hpp"

#include <algorithm>
#include <cmath>

namespace seqinfo {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kBayesTol = 1e-10;

}  // namespace

Belief::Belief(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("Belief: empty weight vector");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= -kWeightTol && w <= 1.0 + kWeightTol))
            throw std::invalid_argument("Belief: weight outside [0,1]: " + std::to_string(w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightTol)
        throw std::invalid_argument("Belief: weights sum to " + std::to_string(sum));
    for (double& w : weights_) w = std::clamp(w, 0.0, 1.0);
}

Belief Belief::binary(double mu) { return Belief({1.0 - mu, mu}); }

double Belief::scalar() const {
    if (!is_binary()) throw std::logic_error("Belief: scalar view requires two states");
    return weights_[1];
}

bool Belief::almost_equal(const Belief& other, double tol) const {
    if (other.n_states() != n_states()) return false;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (std::abs(weights_[i] - other.weights_[i]) > tol) return false;
    return true;
}

PosteriorLottery::PosteriorLottery(std::vector<Atom> atoms, Belief prior)
    : atoms_(std::move(atoms)), prior_(std::move(prior)) {
    if (atoms_.empty()) throw std::invalid_argument("PosteriorLottery: no atoms");
    double psum = 0.0;
    for (const auto& a : atoms_) {
        if (a.posterior.n_states() != prior_.n_states())
            throw std::invalid_argument("PosteriorLottery: posterior dimension mismatch");
        if (a.prob < -kWeightTol)
            throw std::invalid_argument("PosteriorLottery: negative atom probability");
        psum += a.prob;
    }
    if (std::abs(psum - 1.0) > kWeightTol)
        throw std::invalid_argument("PosteriorLottery: atom probabilities sum to " +
                                    std::to_string(psum));
    Belief bc = barycenter();
    for (std::size_t i = 0; i < prior_.n_states(); ++i)
        if (std::abs(bc[i] - prior_[i]) > kBayesTol)
            throw std::invalid_argument("PosteriorLottery: not Bayes plausible, barycenter[" +
                                        std::to_string(i) + "] = " + std::to_string(bc[i]) +
                                        " vs prior " + std::to_string(prior_[i]));
}

PosteriorLottery::PosteriorLottery(UncheckedTag, std::vector<Atom> atoms, Belief prior)
    : atoms_(std::move(atoms)), prior_(std::move(prior)) {
    if (atoms_.empty()) throw std::invalid_argument("PosteriorLottery: no atoms");
    double psum = 0.0;
    for (const auto& a : atoms_) {
        if (a.posterior.n_states() != prior_.n_states())
            throw std::invalid_argument("PosteriorLottery: posterior dimension mismatch");
        if (a.prob < -kWeightTol)
            throw std::invalid_argument("PosteriorLottery: negative atom probability");
        psum += a.prob;
    }
    if (std::abs(psum - 1.0) > kWeightTol)
        throw std::invalid_argument("PosteriorLottery: atom probabilities sum to " +
                                    std::to_string(psum));
}

PosteriorLottery PosteriorLottery::unchecked(std::vector<Atom> atoms, Belief prior) {
    return PosteriorLottery(UncheckedTag{}, std::move(atoms), std::move(prior));
}

PosteriorLottery PosteriorLottery::binary(std::vector<std::pair<double, double>> posterior_prob,
                                          double prior) {
    std::vector<Atom> atoms;
    atoms.reserve(posterior_prob.size());
    for (auto& [nu, p] : posterior_prob) atoms.push_back({Belief::binary(nu), p});
    return PosteriorLottery(std::move(atoms), Belief::binary(prior));
}

PosteriorLottery PosteriorLottery::binary_unchecked(
    std::vector<std::pair<double, double>> posterior_prob, double prior) {
    std::vector<Atom> atoms;
    atoms.reserve(posterior_prob.size());
    for (auto& [nu, p] : posterior_prob) atoms.push_back({Belief::binary(nu), p});
    return unchecked(std::move(atoms), Belief::binary(prior));
}

PosteriorLottery PosteriorLottery::binary_full_revelation(double prior) {
    return binary({{0.0, 1.0 - prior}, {1.0, prior}}, prior);
}

Belief PosteriorLottery::barycenter() const {
    std::vector<double> w(prior_.n_states(), 0.0);
    for (const auto& a : atoms_)
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += a.prob * a.posterior[i];
    // Renormalize roundoff so the result is a valid belief.
    double s = 0.0;
    for (double v : w) s += v;
    for (double& v : w) v /= s;
    return Belief(std::move(w));
}

UncertaintyMeasure UncertaintyMeasure::quadratic() { return UncertaintyMeasure(Kind::quadratic); }

UncertaintyMeasure UncertaintyMeasure::entropy() { return UncertaintyMeasure(Kind::entropy); }

UncertaintyMeasure UncertaintyMeasure::tabulated(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("UncertaintyMeasure: tabulated needs matching x/y, size >= 2");
    if (!std::is_sorted(x.begin(), x.end()))
        throw std::invalid_argument("UncertaintyMeasure: tabulated x not increasing");
    if (std::abs(x.front()) > 1e-12 || std::abs(x.back() - 1.0) > 1e-12)
        throw std::invalid_argument("UncertaintyMeasure: tabulated grid must span [0,1]");
    UncertaintyMeasure m(Kind::tabulated);
    m.tab_x_ = std::move(x);
    m.tab_y_ = std::move(y);
    // Fail fast on non-concave inputs: midpoint test on a 1001-point grid.
    const int n = 1001;
    auto at = [&m](double t) { return m.eval(Belief::binary(t)); };
    for (int i = 1; i + 1 < n; ++i) {
        double a = static_cast<double>(i - 1) / (n - 1);
        double b = static_cast<double>(i + 1) / (n - 1);
        double mid = static_cast<double>(i) / (n - 1);
        if (at(mid) < 0.5 * (at(a) + at(b)) - 1e-9)
            throw std::invalid_argument("UncertaintyMeasure: tabulated values not concave near x=" +
                                        std::to_string(mid));
    }
    return m;
}

double UncertaintyMeasure::eval(const Belief& b) const {
    switch (kind_) {
        case Kind::quadratic: {
            double mu = b.scalar();
            return 1.0 - 4.0 * (mu - 0.5) * (mu - 0.5);
        }
        case Kind::entropy: {
            double h = 0.0;
            for (double w : b.weights())
                if (w > 0.0) h -= w * std::log(w);
            return h;
        }
        case Kind::tabulated: {
            double mu = b.scalar();
            auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), mu);
            if (it == tab_x_.begin()) return tab_y_.front();
            if (it == tab_x_.end()) return tab_y_.back();
            std::size_t j = static_cast<std::size_t>(it - tab_x_.begin());
            double t = (mu - tab_x_[j - 1]) / (tab_x_[j] - tab_x_[j - 1]);
            return (1.0 - t) * tab_y_[j - 1] + t * tab_y_[j];
        }
    }
    throw std::logic_error("UncertaintyMeasure: unknown kind");
}

double UncertaintyMeasure::second_derivative(double mu, double h) const {
    switch (kind_) {
        case Kind::quadratic:
            return -8.0;
        case Kind::entropy:
            return -1.0 / (mu * (1.0 - mu));
        case Kind::tabulated: {
            double lo = std::max(h, std::min(mu, 1.0 - h));
            return (eval(lo + h) - 2.0 * eval(lo) + eval(lo - h)) / (h * h);
        }
    }
    throw std::logic_error("UncertaintyMeasure: unknown kind");
}

DecisionUtility::DecisionUtility(std::vector<std::vector<double>> action_payoffs)
    : payoffs_(std::move(action_payoffs)) {
    if (payoffs_.empty()) throw std::invalid_argument("DecisionUtility: no actions");
    for (const auto& row : payoffs_)
        if (row.size() != payoffs_.front().size())
            throw std::invalid_argument("DecisionUtility: ragged payoff matrix");
}

DecisionUtility DecisionUtility::binary_max() {
    return DecisionUtility({{1.0, 0.0}, {0.0, 1.0}});
}

double DecisionUtility::eval(const Belief& b) const {
    if (b.n_states() != payoffs_.front().size())
        throw std::invalid_argument("DecisionUtility: belief dimension mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& row : payoffs_) {
        double v = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) v += b[i] * row[i];
        best = std::max(best, v);
    }
    return best;
}

double info_cost(const PosteriorLottery& pi, const UncertaintyMeasure& H) {
    if (!bayes_plausible(pi))
        throw std::invalid_argument("info_cost: lottery violates Bayes plausibility");
    double h_prior = H.eval(pi.prior());
    double cost = 0.0;
    for (const auto& a : pi.atoms()) cost += a.prob * (h_prior - H.eval(a.posterior));
    return cost;
}

double full_info_value(const PosteriorLottery& pi, const DecisionUtility& F) {
    double v = 0.0;
    for (const auto& a : pi.atoms()) v += a.prob * F.eval(a.posterior);
    return v;
}

bool bayes_plausible(const PosteriorLottery& pi, double tol) {
    std::vector<double> w(pi.prior().n_states(), 0.0);
    for (const auto& a : pi.atoms())
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += a.prob * a.posterior[i];
    for (std::size_t i = 0; i < w.size(); ++i)
        if (std::abs(w[i] - pi.prior()[i]) > tol) return false;
    return true;
}

}  // namespace seqinfo
