#include <chrono>
#include <cstdio>
#include <vector>

#include "wseshadri/curve_models.hpp"
#include "wseshadri/potentials.hpp"

using namespace wseshadri;

namespace {

template <typename F> double time_ms(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main() {
    std::printf("threads: %d\n\n", effective_threads());

    // Sweep kernel: step-1 model over a dense slope grid.
    auto reg = builtin_models();
    const CurveModel& model = reg.at("step1");
    std::vector<Rational> slopes;
    Rational from = rat(69, 10), to = rat(71, 10); // inside the step-1 domain
    const long N = 4000;
    for (long i = 0; i < N; ++i)
        slopes.push_back(from + (to - from) * Rational(i) / Rational(N - 1));

    std::vector<SweepItem> serial_items, parallel_items;
    double t_serial =
        time_ms([&] { serial_items = sweep(model, slopes, false); });
    double t_parallel =
        time_ms([&] { parallel_items = sweep(model, slopes, true); });
    bool agree = serial_items.size() == parallel_items.size();
    for (std::size_t i = 0; agree && i < serial_items.size(); ++i)
        agree = serial_items[i].in_domain == parallel_items[i].in_domain &&
                (!serial_items[i].in_domain ||
                 serial_items[i].report.eps == parallel_items[i].report.eps);
    std::printf("sweep (%ld slopes):        serial %8.1f ms   parallel %8.1f "
                "ms   speedup %.2fx   results %s\n",
                N, t_serial, t_parallel, t_serial / t_parallel,
                agree ? "identical" : "DIFFER");

    // Containment kernel: reference parameters on a denser grid.
    PotentialParams params = reference_params();
    GridSpec grid = make_grid({80}, 1e-9);
    ContainmentReport rs, rp;
    double c_serial =
        time_ms([&] { rs = check_containment(params, grid, false); });
    double c_parallel =
        time_ms([&] { rp = check_containment(params, grid, true); });
    bool c_agree = rs.pass == rp.pass && rs.points_checked == rp.points_checked &&
                   rs.worst_margin == rp.worst_margin;
    std::printf("containment (%zu points): serial %8.1f ms   parallel %8.1f "
                "ms   speedup %.2fx   results %s\n",
                rs.points_checked, c_serial, c_parallel, c_serial / c_parallel,
                c_agree ? "identical" : "DIFFER");
    return 0;
}
