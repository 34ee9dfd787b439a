#include "tracx/net.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tracx {

double activation(double x) { return std::clamp(x / 5.0, -1.0, 1.0); }

double activation_deriv(double x) { return (x > -5.0 && x < 5.0) ? 0.2 : 0.0; }

double delta_from_error(double e, double temperature) {
    return std::clamp(std::tanh(temperature * e), 0.0, 1.0);
}

Mode mode_from_string(const std::string& s) {
    if (s == "tracx2") return Mode::Tracx2;
    if (s == "rae") return Mode::Rae;
    throw DataError("unknown mode: " + s);
}

ActVector next_lhs(const StepTrace& trace, const ActVector& prev_rhs, Mode mode) {
    const double d = (mode == Mode::Rae) ? 0.0 : trace.delta;
    ActVector out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - d) * trace.hidden[i] + d * prev_rhs[i];
    return out;
}

void WeightMatrix::init_uniform(Rng& rng, double half_range) {
    for (auto& x : w) x = rng.uniform(-half_range, half_range);
}

namespace {

void check_hyperparams(const Hyperparams& hp) {
    if (hp.hidden_size != kCodeLen) throw DataError("hidden size must equal the code length (39)");
    if (hp.momentum != 0.0) throw DataError("momentum is not supported; it must stay 0");
    if (hp.learning_rate < 0.0) throw DataError("learning rate must be >= 0");
    if (hp.temperature <= 0.0) throw DataError("temperature must be positive");
}

double mean_abs_diff(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s / static_cast<double>(n);
}

void write_matrix(std::FILE* f, const char* name, const WeightMatrix& m) {
    std::fprintf(f, "%s %d %d\n", name, m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) std::fprintf(f, "%s%a", c ? " " : "", m.at(r, c));
        std::fprintf(f, "\n");
    }
}

struct SnapshotHeader {
    std::string model;
    Encoding encoding = Encoding::Ordinal;
    Hyperparams hp;
};

WeightMatrix read_matrix(std::istream& in, const std::string& expected_name) {
    std::string name;
    int rows = 0, cols = 0;
    if (!(in >> name >> rows >> cols) || name != expected_name)
        throw DataError("snapshot: expected matrix '" + expected_name + "'");
    WeightMatrix m(rows, cols);
    std::string tok;
    for (auto& x : m.w) {
        if (!(in >> tok)) throw DataError("snapshot: truncated matrix " + expected_name);
        x = std::strtod(tok.c_str(), nullptr);
    }
    return m;
}

SnapshotHeader read_header(std::istream& in, const std::string& path) {
    std::string magic, version;
    if (!(in >> magic >> version) || magic != "TRACX-NET" || version != "v1")
        throw DataError("not a v1 net snapshot: " + path);
    SnapshotHeader h;
    std::string key;
    for (;;) {
        if (!(in >> key)) throw DataError("snapshot: truncated header in " + path);
        if (key == "end_header") break;
        std::string val;
        if (!(in >> val)) throw DataError("snapshot: missing value for " + key);
        if (key == "model") h.model = val;
        else if (key == "encoding") h.encoding = encoding_from_string(val);
        else if (key == "hidden") h.hp.hidden_size = std::stoi(val);
        else if (key == "learning_rate") h.hp.learning_rate = std::strtod(val.c_str(), nullptr);
        else if (key == "momentum") h.hp.momentum = std::strtod(val.c_str(), nullptr);
        else if (key == "fahlman_offset") h.hp.fahlman_offset = std::strtod(val.c_str(), nullptr);
        else if (key == "temperature") h.hp.temperature = std::strtod(val.c_str(), nullptr);
        else if (key == "weight_init") h.hp.weight_init_half_range = std::strtod(val.c_str(), nullptr);
        else throw DataError("snapshot: unknown header key " + key);
    }
    return h;
}

void write_header(std::FILE* f, const std::string& model, Encoding enc, const Hyperparams& hp) {
    std::fprintf(f, "TRACX-NET v1\n");
    std::fprintf(f, "model %s\n", model.c_str());
    std::fprintf(f, "encoding %s\n", to_string(enc).c_str());
    std::fprintf(f, "hidden %d\n", hp.hidden_size);
    std::fprintf(f, "learning_rate %a\n", hp.learning_rate);
    std::fprintf(f, "momentum %a\n", hp.momentum);
    std::fprintf(f, "fahlman_offset %a\n", hp.fahlman_offset);
    std::fprintf(f, "temperature %a\n", hp.temperature);
    std::fprintf(f, "weight_init %a\n", hp.weight_init_half_range);
    std::fprintf(f, "end_header\n");
}

class FileHandle {
public:
    FileHandle(const std::string& path, const char* mode) : f_(std::fopen(path.c_str(), mode)) {
        if (!f_) throw DataError("cannot open " + path);
    }
    ~FileHandle() {
        if (f_) std::fclose(f_);
    }
    std::FILE* get() { return f_; }

private:
    std::FILE* f_;
};

} // namespace

Tracx2Net::Tracx2Net(Encoding encoding, const Hyperparams& hp, std::uint64_t seed)
    : hp_(hp), codes_(encoding), w_ih_(kCodeLen, kPairLen + 1), w_ho_(kPairLen, kCodeLen + 1) {
    check_hyperparams(hp_);
    Rng rng(seed);
    w_ih_.init_uniform(rng, hp_.weight_init_half_range);
    w_ho_.init_uniform(rng, hp_.weight_init_half_range);
}

ForwardResult Tracx2Net::forward(const ActVector& lhs, const ActVector& rhs) const {
    ForwardResult res;
    res.output.resize(kPairLen);
    double input[kPairLen];
    for (int i = 0; i < kCodeLen; ++i) {
        input[i] = lhs[static_cast<std::size_t>(i)];
        input[kCodeLen + i] = rhs[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < kCodeLen; ++j) {
        double a = w_ih_.at(j, kPairLen); // bias
        const double* row = &w_ih_.w[static_cast<std::size_t>(j) * static_cast<std::size_t>(w_ih_.cols)];
        for (int i = 0; i < kPairLen; ++i) a += row[i] * input[i];
        res.hidden[static_cast<std::size_t>(j)] = activation(a);
    }
    for (int o = 0; o < kPairLen; ++o) {
        double a = w_ho_.at(o, kCodeLen); // bias
        const double* row = &w_ho_.w[static_cast<std::size_t>(o) * static_cast<std::size_t>(w_ho_.cols)];
        for (int j = 0; j < kCodeLen; ++j) a += row[j] * res.hidden[static_cast<std::size_t>(j)];
        res.output[static_cast<std::size_t>(o)] = activation(a);
    }
    res.error = mean_abs_diff(res.output.data(), input, kPairLen);
    return res;
}

Tracx2Gradients Tracx2Net::gradients(const ActVector& lhs, const ActVector& rhs) const {
    Tracx2Gradients g{WeightMatrix(kCodeLen, kPairLen + 1), WeightMatrix(kPairLen, kCodeLen + 1)};
    double input[kPairLen];
    for (int i = 0; i < kCodeLen; ++i) {
        input[i] = lhs[static_cast<std::size_t>(i)];
        input[kCodeLen + i] = rhs[static_cast<std::size_t>(i)];
    }
    double hidden_pre[kCodeLen], hidden[kCodeLen];
    for (int j = 0; j < kCodeLen; ++j) {
        double a = w_ih_.at(j, kPairLen);
        const double* row = &w_ih_.w[static_cast<std::size_t>(j) * static_cast<std::size_t>(w_ih_.cols)];
        for (int i = 0; i < kPairLen; ++i) a += row[i] * input[i];
        hidden_pre[j] = a;
        hidden[j] = activation(a);
    }
    double delta_out[kPairLen];
    for (int o = 0; o < kPairLen; ++o) {
        double a = w_ho_.at(o, kCodeLen);
        const double* row = &w_ho_.w[static_cast<std::size_t>(o) * static_cast<std::size_t>(w_ho_.cols)];
        for (int j = 0; j < kCodeLen; ++j) a += row[j] * hidden[j];
        const double out = activation(a);
        delta_out[o] = kLossScale * (out - input[o]) * (activation_deriv(a) + hp_.fahlman_offset);
    }
    for (int o = 0; o < kPairLen; ++o) {
        double* grow = &g.g_ho.w[static_cast<std::size_t>(o) * static_cast<std::size_t>(g.g_ho.cols)];
        for (int j = 0; j < kCodeLen; ++j) grow[j] = delta_out[o] * hidden[j];
        grow[kCodeLen] = delta_out[o];
    }
    for (int j = 0; j < kCodeLen; ++j) {
        double back = 0.0;
        for (int o = 0; o < kPairLen; ++o) back += delta_out[o] * w_ho_.at(o, j);
        const double dh = back * (activation_deriv(hidden_pre[j]) + hp_.fahlman_offset);
        double* grow = &g.g_ih.w[static_cast<std::size_t>(j) * static_cast<std::size_t>(g.g_ih.cols)];
        for (int i = 0; i < kPairLen; ++i) grow[i] = dh * input[i];
        grow[kPairLen] = dh;
    }
    return g;
}

void Tracx2Net::apply(const Tracx2Gradients& g) {
    const double lr = hp_.learning_rate;
    for (std::size_t i = 0; i < w_ih_.w.size(); ++i) w_ih_.w[i] -= lr * g.g_ih.w[i];
    for (std::size_t i = 0; i < w_ho_.w.size(); ++i) w_ho_.w[i] -= lr * g.g_ho.w[i];
}

StepTrace Tracx2Net::backprop_step(const ActVector& lhs, const ActVector& rhs, Mode mode) {
    const ForwardResult fwd = forward(lhs, rhs);
    if (!std::isfinite(fwd.error) || fwd.error < 0.0 || fwd.error > 2.0)
        throw NumericError("training step error outside [0,2]: " + std::to_string(fwd.error));
    StepTrace trace;
    trace.error = fwd.error;
    trace.delta = delta_from_error(fwd.error, hp_.temperature);
    trace.hidden = fwd.hidden;
    trace.lhs_next = next_lhs(trace, rhs, mode);
    apply(gradients(lhs, rhs));
    return trace;
}

void Tracx2Net::train_corpus(const Corpus& corpus, int epochs, Mode mode, Rng& rng, const TrainObserver& observer) {
    std::vector<int> order(corpus.songs.size());
    std::iota(order.begin(), order.end(), 0);
    ActVector lhs{};
    bool have_state = false;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (int s : order) {
            const auto& iv = corpus.songs[static_cast<std::size_t>(s)].intervals;
            if (iv.size() < 2) {
                ++skipped_songs_;
                continue;
            }
            // Song boundaries follow from the delta policy. TRACX2 slides a
            // fresh code pair in (boundary delta = 1). The RAE keeps delta at
            // 0 everywhere, so its hidden state carries across songs and the
            // new song's first interval enters on the RHS.
            std::size_t t0;
            if (mode == Mode::Rae && have_state) {
                t0 = 0;
            } else {
                lhs = codes_.code(iv[0]);
                t0 = 1;
            }
            for (std::size_t t = t0; t < iv.size(); ++t) {
                const Code& rhs = codes_.code(iv[t]);
                const StepTrace trace = backprop_step(lhs, rhs, mode);
                if (observer) observer({epoch, s, static_cast<int>(t) - 1, trace.error, trace.delta});
                lhs = trace.lhs_next;
            }
            have_state = true;
        }
    }
}

double Tracx2Net::word_error(const IntervalWord& word, Mode mode) const {
    if (word.size() < 2) throw DataError("word_error needs a word of length >= 2: " + word.labels());
    ActVector lhs = codes_.code(word.intervals[0]);
    double sum = 0.0;
    for (std::size_t t = 1; t < word.size(); ++t) {
        const Code& rhs = codes_.code(word.intervals[t]);
        const ForwardResult fwd = forward(lhs, rhs);
        sum += fwd.error;
        if (t + 1 < word.size()) {
            StepTrace trace;
            trace.error = fwd.error;
            trace.delta = delta_from_error(fwd.error, hp_.temperature);
            trace.hidden = fwd.hidden;
            lhs = next_lhs(trace, rhs, mode);
        }
    }
    return sum / static_cast<double>(word.size() - 1);
}

ActVector Tracx2Net::hidden_rep(const IntervalWord& word, Mode mode) const {
    if (word.size() < 2) throw DataError("hidden_rep needs a word of length >= 2: " + word.labels());
    ActVector lhs = codes_.code(word.intervals[0]);
    ActVector hidden{};
    for (std::size_t t = 1; t < word.size(); ++t) {
        const Code& rhs = codes_.code(word.intervals[t]);
        const ForwardResult fwd = forward(lhs, rhs);
        hidden = fwd.hidden;
        if (t + 1 < word.size()) {
            StepTrace trace;
            trace.error = fwd.error;
            trace.delta = delta_from_error(fwd.error, hp_.temperature);
            trace.hidden = fwd.hidden;
            lhs = next_lhs(trace, rhs, mode);
        }
    }
    return hidden;
}

void Tracx2Net::save_snapshot(const std::string& path, const std::string& model_name) const {
    const std::string tmp = path + ".tmp";
    {
        FileHandle f(tmp, "wb");
        write_header(f.get(), model_name, codes_.encoding(), hp_);
        write_matrix(f.get(), "weights_ih", w_ih_);
        write_matrix(f.get(), "weights_ho", w_ho_);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw DataError("cannot write snapshot: " + path);
}

Tracx2Net Tracx2Net::load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open snapshot: " + path);
    const SnapshotHeader h = read_header(in, path);
    if (h.model != "tracx2" && h.model != "rae") throw DataError("snapshot holds model '" + h.model + "', not tracx2/rae");
    Tracx2Net net(h.encoding, h.hp, 0);
    net.w_ih_ = read_matrix(in, "weights_ih");
    net.w_ho_ = read_matrix(in, "weights_ho");
    if (net.w_ih_.rows != kCodeLen || net.w_ih_.cols != kPairLen + 1 || net.w_ho_.rows != kPairLen ||
        net.w_ho_.cols != kCodeLen + 1)
        throw DataError("snapshot has wrong dimensions: " + path);
    return net;
}

SrnNet::SrnNet(Encoding encoding, const Hyperparams& hp, std::uint64_t seed)
    : hp_(hp), codes_(encoding), w_in_(kCodeLen, kPairLen + 1), w_out_(kCodeLen, kCodeLen + 1) {
    check_hyperparams(hp_);
    Rng rng(seed);
    w_in_.init_uniform(rng, hp_.weight_init_half_range);
    w_out_.init_uniform(rng, hp_.weight_init_half_range);
}

SrnNet::Step SrnNet::forward(const Code& input, const ActVector& context) const {
    Step st;
    double in[kPairLen];
    for (int i = 0; i < kCodeLen; ++i) {
        in[i] = input[static_cast<std::size_t>(i)];
        in[kCodeLen + i] = context[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < kCodeLen; ++j) {
        double a = w_in_.at(j, kPairLen);
        const double* row = &w_in_.w[static_cast<std::size_t>(j) * static_cast<std::size_t>(w_in_.cols)];
        for (int i = 0; i < kPairLen; ++i) a += row[i] * in[i];
        st.hidden[static_cast<std::size_t>(j)] = activation(a);
    }
    for (int o = 0; o < kCodeLen; ++o) {
        double a = w_out_.at(o, kCodeLen);
        const double* row = &w_out_.w[static_cast<std::size_t>(o) * static_cast<std::size_t>(w_out_.cols)];
        for (int j = 0; j < kCodeLen; ++j) a += row[j] * st.hidden[static_cast<std::size_t>(j)];
        st.output[static_cast<std::size_t>(o)] = activation(a);
    }
    return st;
}

void SrnNet::learn_step(const Code& input, const ActVector& context, const Code& target) {
    double in[kPairLen];
    for (int i = 0; i < kCodeLen; ++i) {
        in[i] = input[static_cast<std::size_t>(i)];
        in[kCodeLen + i] = context[static_cast<std::size_t>(i)];
    }
    double hidden_pre[kCodeLen], hidden[kCodeLen];
    for (int j = 0; j < kCodeLen; ++j) {
        double a = w_in_.at(j, kPairLen);
        const double* row = &w_in_.w[static_cast<std::size_t>(j) * static_cast<std::size_t>(w_in_.cols)];
        for (int i = 0; i < kPairLen; ++i) a += row[i] * in[i];
        hidden_pre[j] = a;
        hidden[j] = activation(a);
    }
    double delta_out[kCodeLen];
    for (int o = 0; o < kCodeLen; ++o) {
        double a = w_out_.at(o, kCodeLen);
        const double* row = &w_out_.w[static_cast<std::size_t>(o) * static_cast<std::size_t>(w_out_.cols)];
        for (int j = 0; j < kCodeLen; ++j) a += row[j] * hidden[j];
        const double out = activation(a);
        if (!std::isfinite(out)) throw NumericError("non-finite activation during SRN training");
        delta_out[o] = kLossScale * (out - target[static_cast<std::size_t>(o)]) * (activation_deriv(a) + hp_.fahlman_offset);
    }
    const double lr = hp_.learning_rate;
    double back[kCodeLen] = {0};
    for (int o = 0; o < kCodeLen; ++o) {
        double* row = &w_out_.w[static_cast<std::size_t>(o) * static_cast<std::size_t>(w_out_.cols)];
        for (int j = 0; j < kCodeLen; ++j) {
            back[j] += delta_out[o] * row[j];
            row[j] -= lr * delta_out[o] * hidden[j];
        }
        row[kCodeLen] -= lr * delta_out[o];
    }
    for (int j = 0; j < kCodeLen; ++j) {
        const double dh = back[j] * (activation_deriv(hidden_pre[j]) + hp_.fahlman_offset);
        double* row = &w_in_.w[static_cast<std::size_t>(j) * static_cast<std::size_t>(w_in_.cols)];
        for (int i = 0; i < kPairLen; ++i) row[i] -= lr * dh * in[i];
        row[kPairLen] -= lr * dh;
    }
}

void SrnNet::train_corpus(const Corpus& corpus, int epochs, Rng& rng) {
    std::vector<int> order(corpus.songs.size());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (int s : order) {
            const auto& iv = corpus.songs[static_cast<std::size_t>(s)].intervals;
            if (iv.size() < 2) continue;
            ActVector context{};
            for (std::size_t t = 0; t + 1 < iv.size(); ++t) {
                const Code& input = codes_.code(iv[t]);
                const Step st = forward(input, context);
                learn_step(input, context, codes_.code(iv[t + 1]));
                context = st.hidden;
            }
        }
    }
}

double SrnNet::word_error(const IntervalWord& word) const {
    if (word.size() < 2) throw DataError("word_error needs a word of length >= 2: " + word.labels());
    ActVector context{};
    double sum = 0.0;
    for (std::size_t t = 0; t + 1 < word.size(); ++t) {
        const Step st = forward(codes_.code(word.intervals[t]), context);
        const Code& target = codes_.code(word.intervals[t + 1]);
        sum += mean_abs_diff(st.output.data(), target.data(), kCodeLen);
        context = st.hidden;
    }
    return sum / static_cast<double>(word.size() - 1);
}

ActVector SrnNet::hidden_rep(const IntervalWord& word) const {
    if (word.size() < 2) throw DataError("hidden_rep needs a word of length >= 2: " + word.labels());
    ActVector context{};
    ActVector hidden{};
    for (std::size_t t = 0; t + 1 < word.size(); ++t) {
        const Step st = forward(codes_.code(word.intervals[t]), context);
        hidden = st.hidden;
        context = st.hidden;
    }
    return hidden;
}

void SrnNet::save_snapshot(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        FileHandle f(tmp, "wb");
        write_header(f.get(), "srn", codes_.encoding(), hp_);
        write_matrix(f.get(), "weights_in", w_in_);
        write_matrix(f.get(), "weights_out", w_out_);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw DataError("cannot write snapshot: " + path);
}

SrnNet SrnNet::load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open snapshot: " + path);
    const SnapshotHeader h = read_header(in, path);
    if (h.model != "srn") throw DataError("snapshot holds model '" + h.model + "', not srn");
    SrnNet net(h.encoding, h.hp, 0);
    net.w_in_ = read_matrix(in, "weights_in");
    net.w_out_ = read_matrix(in, "weights_out");
    if (net.w_in_.rows != kCodeLen || net.w_in_.cols != kPairLen + 1 || net.w_out_.rows != kCodeLen ||
        net.w_out_.cols != kCodeLen + 1)
        throw DataError("snapshot has wrong dimensions: " + path);
    return net;
}

std::string snapshot_model_name(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open snapshot: " + path);
    const SnapshotHeader h = read_header(in, path);
    return h.model;
}

} // namespace tracx
