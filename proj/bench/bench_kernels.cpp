// Timings of the batch kernels: serial reference vs OpenMP.
// Usage: bench_kernels [corpus_manifest]

#include <chrono>
#include <cstdio>
#include <string>

#include "tracx/experiments.hpp"

using namespace tracx;
using Clock = std::chrono::steady_clock;

namespace {

Corpus synthetic_corpus(int songs, int len, std::uint64_t seed) {
    Rng rng(seed);
    Corpus c;
    for (int s = 0; s < songs; ++s) {
        Song song;
        song.name = "synthetic-" + std::to_string(s);
        for (int i = 0; i < len; ++i) song.intervals.push_back(Interval(rng.int_range(-7, 7)));
        c.songs.push_back(std::move(song));
    }
    return c;
}

template <typename Fn>
double time_ms(Fn&& fn) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double omp_ms) {
    std::printf("%-28s serial %8.1f ms   openmp %8.1f ms   speedup %.2fx\n", name, serial_ms, omp_ms,
                serial_ms / omp_ms);
}

} // namespace

int main(int argc, char** argv) {
    Corpus corpus;
    if (argc > 1)
        corpus = load_corpus(argv[1]);
    else
        corpus = synthetic_corpus(10, 44, 1234);
    std::printf("threads available: %d\n", hardware_threads());
    const Hyperparams hp;

    {
        const auto words = word_inventory(corpus, 2).words();
        const auto run = [&](Exec e) {
            return replicate_word_errors(ModelKind::Tracx2, corpus, Encoding::Ordinal, hp, 30, words, 20, 42, e);
        };
        std::vector<double> serial_out, omp_out;
        const double s = time_ms([&] { serial_out = run(Exec::Serial); });
        const double p = time_ms([&] { omp_out = run(Exec::OpenMP); });
        report("20 replicate trainings", s, p);
        if (serial_out != omp_out) {
            std::fprintf(stderr, "MISMATCH: replicate kernel outputs differ between executors\n");
            return 1;
        }
    }

    {
        const AnyNet net = AnyNet::train(ModelKind::Tracx2, corpus, Encoding::Ordinal, hp, 30, 42);
        Rng rng(7);
        const auto words = random_3words(2000, rng);
        std::vector<double> serial_out, omp_out;
        const double s = time_ms([&] { serial_out = score_words(net, words, Exec::Serial); });
        const double p = time_ms([&] { omp_out = score_words(net, words, Exec::OpenMP); });
        report("scoring 2000 words", s, p);
        if (serial_out != omp_out) {
            std::fprintf(stderr, "MISMATCH: scoring kernel outputs differ between executors\n");
            return 1;
        }

        Matrix serial_m, omp_m;
        const double sm = time_ms([&] { serial_m = rep_matrix(net, words, Exec::Serial); });
        const double pm = time_ms([&] { omp_m = rep_matrix(net, words, Exec::OpenMP); });
        report("rep matrix, 2000 words", sm, pm);
        if (serial_m.data != omp_m.data) {
            std::fprintf(stderr, "MISMATCH: rep-matrix kernel outputs differ between executors\n");
            return 1;
        }

        const double cs = time_ms([&] { contour_study(serial_m, words); });
        report("contour pair scan (serial)", cs, cs);
    }

    return 0;
}
