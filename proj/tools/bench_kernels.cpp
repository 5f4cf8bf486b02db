// Compares the OpenMP APSP kernel against the serial Floyd-Warshall reference.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "ribe/graph.hpp"
#include "ribe/metric.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    for (int n : {128, 256, 512, 1024}) {
        ribe::Graph g = ribe::gen_random_regular(n, 4, 3, 7);
        auto t0 = clock::now();
        ribe::FiniteMetric parallel = ribe::metric_from_graph(g);
        auto t1 = clock::now();
        ribe::FiniteMetric serial = ribe::metric_from_graph_serial(g);
        auto t2 = clock::now();
        double max_dev = 0.0;
        for (std::size_t i = 0; i < parallel.raw().size(); ++i)
            max_dev = std::max(max_dev, std::abs(parallel.raw()[i] - serial.raw()[i]));
        double ms_par = std::chrono::duration<double, std::milli>(t1 - t0).count();
        double ms_ser = std::chrono::duration<double, std::milli>(t2 - t1).count();
        std::printf("n=%d parallel_ms=%.2f serial_ms=%.2f speedup=%.2fx max_dev=%g\n", n,
                    ms_par, ms_ser, ms_ser / ms_par, max_dev);
        if (max_dev != 0.0) return 1;
    }
    return 0;
}
