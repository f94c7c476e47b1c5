#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqinfo {

/// A point on the probability simplex over a finite state space.
///
/// Binary problems use the scalar shortcut: the belief is identified with
/// the probability of state 1.
class Belief {
  public:
    explicit Belief(std::vector<double> weights);

    /// Binary belief from the probability of state 1.
    static Belief binary(double mu);

    std::size_t n_states() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }

    bool is_binary() const { return weights_.size() == 2; }
    /// Probability of state 1 (binary beliefs only).
    double scalar() const;

    bool almost_equal(const Belief& other, double tol = 1e-12) const;

  private:
    std::vector<double> weights_;
};

/// Finite-support distribution over posterior beliefs together with the
/// prior it must average back to (Bayes plausibility).
class PosteriorLottery {
  public:
    struct Atom {
        Belief posterior;
        double prob;
    };

    PosteriorLottery(std::vector<Atom> atoms, Belief prior);

    /// Skips the Bayes-plausibility check (candidate data to be screened
    /// with bayes_plausible; atom probabilities are still validated).
    static PosteriorLottery unchecked(std::vector<Atom> atoms, Belief prior);

    /// Two-atom binary lottery {(0,.5),(1,.5)}-style from scalars.
    static PosteriorLottery binary(std::vector<std::pair<double, double>> posterior_prob,
                                   double prior);
    static PosteriorLottery binary_unchecked(
        std::vector<std::pair<double, double>> posterior_prob, double prior);
    /// Full revelation of a binary state from the given prior.
    static PosteriorLottery binary_full_revelation(double prior);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const Belief& prior() const { return prior_; }
    std::size_t support_size() const { return atoms_.size(); }

    /// Barycenter of the atoms (should equal the prior).
    Belief barycenter() const;

  private:
    struct UncheckedTag {};
    PosteriorLottery(UncheckedTag, std::vector<Atom> atoms, Belief prior);
    std::vector<Atom> atoms_;
    Belief prior_;
};

/// Concave uncertainty index H on beliefs. Induces the posterior-separable
/// cost of a lottery as the expected drop of H from prior to posterior.
///
/// Built-in families: the quadratic index 1-4(mu-1/2)^2 on binary states,
/// Shannon entropy on any state space, and user-supplied tabulated concave
/// functions of the binary scalar (linear interpolation). Tabulated inputs
/// are rejected at construction if they fail a 1001-point concavity check.
class UncertaintyMeasure {
  public:
    enum class Kind { quadratic, entropy, tabulated };

    static UncertaintyMeasure quadratic();
    static UncertaintyMeasure entropy();
    static UncertaintyMeasure tabulated(std::vector<double> x, std::vector<double> y);

    Kind kind() const { return kind_; }

    double operator()(const Belief& b) const { return eval(b); }
    double eval(const Belief& b) const;
    /// Convenience overload for binary scalars.
    double eval(double mu) const { return eval(Belief::binary(mu)); }

    /// H'' at a binary scalar belief. Defined for the binary-scalar
    /// representation only; tabulated measures use a central second
    /// difference with step h.
    double second_derivative(double mu, double h = 1e-5) const;

  private:
    UncertaintyMeasure(Kind kind) : kind_(kind) {}
    Kind kind_;
    std::vector<double> tab_x_, tab_y_;
};

/// Decision value F(mu) = sup_a E_mu[u(a,x)], a maximum of affine
/// functions of the belief. One payoff vector per action.
class DecisionUtility {
  public:
    explicit DecisionUtility(std::vector<std::vector<double>> action_payoffs);

    /// Binary two-action problem with F(nu) = max(nu, 1-nu).
    static DecisionUtility binary_max();

    double operator()(const Belief& b) const { return eval(b); }
    double eval(const Belief& b) const;
    double eval(double mu) const { return eval(Belief::binary(mu)); }

    std::size_t n_actions() const { return payoffs_.size(); }
    const std::vector<std::vector<double>>& payoffs() const { return payoffs_; }

  private:
    std::vector<std::vector<double>> payoffs_;
};

/// Posterior-separable informativeness of a lottery:
/// sum_i p_i (H(prior) - H(nu_i)). Nonnegative for concave H.
double info_cost(const PosteriorLottery& pi, const UncertaintyMeasure& H);

/// Expected decision value under the lottery, E_pi[F(nu)].
double full_info_value(const PosteriorLottery& pi, const DecisionUtility& F);

/// True iff the barycenter of the atoms equals the prior within tol.
bool bayes_plausible(const PosteriorLottery& pi, double tol = 1e-10);

}  // namespace seqinfo
