#ifndef TRACX_NET_HPP
#define TRACX_NET_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tracx/corpus.hpp"
#include "tracx/interval.hpp"
#include "tracx/rng.hpp"

namespace tracx {

struct Hyperparams {
    double learning_rate = 0.01;
    double momentum = 0.0; // plain SGD; nonzero is rejected
    double fahlman_offset = 0.1;
    double temperature = 5.0;
    double weight_init_half_range = 0.5;
    int hidden_size = kCodeLen;
    int epochs = 30; // 100 for the tone-stream study
};

// Squashing function: linear with slope 1/5 over [-5,5], saturating at -1/+1.
double activation(double x);
double activation_deriv(double x);

// Normalization constant of the squared-error objective,
// L = kLossScale * 0.5 * sum((output - input)^2). The objective's form is
// fixed; this constant sets the per-step gradient magnitude at the fixed
// learning rate of 0.01.
inline constexpr double kLossScale = 0.5;

// Delta gate: tanh(temperature * E), 0 at E=0 and ~1 at E=2.
double delta_from_error(double e, double temperature);

enum class Mode { Tracx2, Rae };

Mode mode_from_string(const std::string& s);

struct StepTrace {
    double error = 0.0; // E, mean absolute input-output difference, in [0,2]
    double delta = 0.0;
    ActVector hidden{};
    ActVector lhs_next{};
};

// (1-delta)*hidden + delta*prev_rhs; RAE mode pins delta to 0 (pure recursion).
ActVector next_lhs(const StepTrace& trace, const ActVector& prev_rhs, Mode mode);

// Minimal dense weight matrix, row-major, with an implicit trailing bias column.
struct WeightMatrix {
    int rows = 0, cols = 0;
    std::vector<double> w;

    WeightMatrix() = default;
    WeightMatrix(int r, int c) : rows(r), cols(c), w(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0.0) {}
    double& at(int r, int c) { return w[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
    double at(int r, int c) const { return w[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
    void init_uniform(Rng& rng, double half_range);
    bool operator==(const WeightMatrix&) const = default;
};

struct Tracx2Gradients {
    WeightMatrix g_ih; // 39 x 79
    WeightMatrix g_ho; // 78 x 40
};

struct ForwardResult {
    ActVector hidden{};
    std::vector<double> output; // 78 values in [-1,1]
    double error = 0.0;
};

struct TrainStepSample {
    int epoch = 0;
    int song = 0; // index in the corpus
    int step = 0; // pair index within the song
    double error = 0.0;
    double delta = 0.0;
};
using TrainObserver = std::function<void(const TrainStepSample&)>;

// The three-layer recursive autoencoder: 78(+bias) -> 39 -> 78(+bias).
// RAE is the same network run with Mode::Rae.
class Tracx2Net {
public:
    Tracx2Net(Encoding encoding, const Hyperparams& hp, std::uint64_t seed);

    const Hyperparams& hyperparams() const { return hp_; }
    Encoding encoding() const { return codes_.encoding(); }
    const Code& code(Interval iv) const { return codes_.code(iv); }

    ForwardResult forward(const ActVector& lhs, const ActVector& rhs) const;

    // Gradient of 0.5 * sum((output - input)^2) with the Fahlman offset folded
    // into the activation derivative.
    Tracx2Gradients gradients(const ActVector& lhs, const ActVector& rhs) const;

    // One forward + weight update; returns the pre-update trace.
    StepTrace backprop_step(const ActVector& lhs, const ActVector& rhs, Mode mode);

    // epochs passes over the corpus, song order reshuffled per epoch, weights
    // updated at every step. Boundary handling follows the mode's delta
    // policy: TRACX2 starts each song from a fresh code pair, the RAE (delta
    // pinned to 0) carries its hidden state across song boundaries. Songs
    // with fewer than 2 intervals are skipped (counted in skipped_songs).
    void train_corpus(const Corpus& corpus, int epochs, Mode mode, Rng& rng, const TrainObserver& observer = {});

    // Frozen-weights scoring: mean E over the word's consecutive pairs.
    double word_error(const IntervalWord& word, Mode mode) const;
    // Hidden vector of the final pair of the scoring pass.
    ActVector hidden_rep(const IntervalWord& word, Mode mode) const;

    void save_snapshot(const std::string& path, const std::string& model_name) const;
    static Tracx2Net load_snapshot(const std::string& path);

    int skipped_songs() const { return skipped_songs_; }

    const WeightMatrix& weights_ih() const { return w_ih_; }
    const WeightMatrix& weights_ho() const { return w_ho_; }
    WeightMatrix& mutable_weights_ih() { return w_ih_; }
    WeightMatrix& mutable_weights_ho() { return w_ho_; }
    bool operator==(const Tracx2Net& o) const { return w_ih_ == o.w_ih_ && w_ho_ == o.w_ho_; }

private:
    void apply(const Tracx2Gradients& g);

    Hyperparams hp_;
    CodeBook codes_;
    WeightMatrix w_ih_; // 39 x (78+1)
    WeightMatrix w_ho_; // 78 x (39+1)
    int skipped_songs_ = 0;
};

// Elman predictor: input 39 + context 39 (+bias) -> hidden 39 (+bias) -> 39.
// Trained to predict the code of the next interval; context carries the
// previous hidden state and is zeroed at song boundaries and for scoring.
class SrnNet {
public:
    SrnNet(Encoding encoding, const Hyperparams& hp, std::uint64_t seed);

    const Hyperparams& hyperparams() const { return hp_; }
    Encoding encoding() const { return codes_.encoding(); }

    void train_corpus(const Corpus& corpus, int epochs, Rng& rng);

    // Mean over steps of the mean absolute difference between the predicted
    // and actual next code, context starting at 0.
    double word_error(const IntervalWord& word) const;
    ActVector hidden_rep(const IntervalWord& word) const;

    void save_snapshot(const std::string& path) const;
    static SrnNet load_snapshot(const std::string& path);

    const WeightMatrix& weights_in() const { return w_in_; }
    const WeightMatrix& weights_out() const { return w_out_; }
    bool operator==(const SrnNet& o) const { return w_in_ == o.w_in_ && w_out_ == o.w_out_; }

private:
    struct Step {
        ActVector hidden{};
        ActVector output{};
        double error = 0.0;
    };
    Step forward(const Code& input, const ActVector& context) const;
    void learn_step(const Code& input, const ActVector& context, const Code& target);

    Hyperparams hp_;
    CodeBook codes_;
    WeightMatrix w_in_;  // 39 x (78+1)
    WeightMatrix w_out_; // 39 x (39+1)
};

// Reads the "model" line of a snapshot file without loading the weights.
std::string snapshot_model_name(const std::string& path);

} // namespace tracx

#endif
