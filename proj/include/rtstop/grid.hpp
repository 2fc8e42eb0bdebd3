#pragma once

// A random time grid: one simulated path of exercise events (k, tau_k, X_k, U_k).
// Event 0 is the root state. Storage is flat so sub-simulation loops can reuse
// one grid buffer without reallocating.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rtstop {

struct GridPoint {
    int index = 0;
    double tau = 0.0;
    std::vector<double> state;
};

class RandomTimeGrid {
  public:
    RandomTimeGrid() = default;
    explicit RandomTimeGrid(int dim) : dim_(dim) {}

    void reset(int dim, int first_index, double root_tau, std::span<const double> root_state,
               double root_payoff) {
        dim_ = dim;
        first_index_ = first_index;
        taus_.clear();
        payoffs_.clear();
        states_.clear();
        append(root_tau, root_state, root_payoff);
    }

    void append(double tau, std::span<const double> state, double payoff) {
        taus_.push_back(tau);
        payoffs_.push_back(payoff);
        states_.insert(states_.end(), state.begin(), state.end());
    }

    void reserve(std::size_t events) {
        taus_.reserve(events);
        payoffs_.reserve(events);
        states_.reserve(events * static_cast<std::size_t>(dim_));
    }

    // Number of stored events, including the root.
    std::size_t size() const { return taus_.size(); }
    int dim() const { return dim_; }

    // Global exercise index of stored position p.
    int index(std::size_t p) const { return first_index_ + static_cast<int>(p); }
    int first_index() const { return first_index_; }
    int last_index() const { return first_index_ + static_cast<int>(taus_.size()) - 1; }

    double tau(std::size_t p) const { return taus_[p]; }
    double payoff(std::size_t p) const { return payoffs_[p]; }
    std::span<const double> state(std::size_t p) const {
        return {states_.data() + p * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

    // Position of global index k; throws if not stored.
    std::size_t position(int k) const {
        const int p = k - first_index_;
        if (p < 0 || static_cast<std::size_t>(p) >= taus_.size())
            throw std::out_of_range("grid index not stored");
        return static_cast<std::size_t>(p);
    }

    GridPoint point(std::size_t p) const {
        auto s = state(p);
        return GridPoint{index(p), tau(p), {s.begin(), s.end()}};
    }

  private:
    int dim_ = 1;
    int first_index_ = 0;
    std::vector<double> taus_;
    std::vector<double> payoffs_;
    std::vector<double> states_;
};

}  // namespace rtstop
