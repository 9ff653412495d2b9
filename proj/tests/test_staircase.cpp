#include "boxdos/errors.hpp"
#include "boxdos/spectra.hpp"
#include "boxdos/staircase.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace boxdos;

namespace {

// Energies {2,2,3,3,3,3,5,5,5}.
Spectrum toy() { return Spectrum({{2.0, 2, {}}, {3.0, 4, {}}, {5.0, 3, {}}}, 5.0, 1); }

} // namespace

TEST_CASE("staircase of the nine-level toy spectrum") {
    const Staircase st(toy());
    REQUIRE(st.size() == 3);
    CHECK(st.energies() == std::vector<double>{2, 3, 5});
    CHECK(st.counts() == std::vector<std::int64_t>{2, 6, 9});
    CHECK(evaluate_N(st, 4.0) == 6);
    CHECK(evaluate_N(st, 3.0) == 6);
    CHECK(evaluate_N(st, 2.999) == 2);
    CHECK(evaluate_N(st, 1.0) == 0);
    CHECK(evaluate_N(st, 100.0) == 9);

    const auto spikes = degeneracy_series(toy());
    REQUIRE(spikes.size() == 3);
    CHECK(spikes[1].energy == 3.0);
    CHECK(spikes[1].degeneracy == 4);
}

TEST_CASE("single level and empty spectrum") {
    const Staircase one(Spectrum({{7.5, 1, {}}}, 8.0));
    REQUIRE(one.size() == 1);
    CHECK(one.counts()[0] == 1);
    const Staircase none{Spectrum{}};
    CHECK(none.empty());
    CHECK(none.evaluate(10.0) == 0);
}

TEST_CASE("cube staircase") {
    const Spectrum s = enumerate(cube(), 1024);
    const Staircase st(s);
    CHECK(st.evaluate(1024) == 15954);
    CHECK(st.total() == s.total_states());
    CHECK(st.evaluate(950) - st.evaluate(949.5) == 63);
    for (std::size_t i = 1; i < st.size(); ++i) {
        CHECK(st.energies()[i] > st.energies()[i - 1]);
        CHECK(st.counts()[i] > st.counts()[i - 1]);
        CHECK(st.counts()[i] - st.counts()[i - 1] == s.levels()[i].degeneracy);
    }
    bool has_941 = false;
    for (const auto& p : degeneracy_series(s)) {
        has_941 = has_941 || (p.energy == 941 && p.degeneracy == 66);
    }
    CHECK(has_941);
}

TEST_CASE("2-D square density fluctuates about pi/4") {
    const Spectrum s = enumerate(square(), 1600);
    double previous = std::numeric_limits<double>::infinity();
    for (double w : {10.0, 30.0, 60.0}) {
        const auto series = dos_window(s, w, window_centers(100, 1500, w));
        double worst = 0.0;
        for (const DosSample& x : series.samples) {
            worst = std::max(worst, std::abs(x.g / (std::numbers::pi / 4) - 1.0));
        }
        CHECK_MESSAGE(worst < 0.25, "window " << w);
        CHECK(worst < previous);
        previous = worst;
    }
}

TEST_CASE("windows are half-open and tile exactly") {
    const Spectrum s = toy();
    const std::vector<double> centers{2.5};
    CHECK(dos_window(s, 1.0, centers).samples[0].g == 4.0); // (2, 3] holds the four states at 3
    CHECK(dos_window(s, 0.5, std::vector<double>{4.0}).samples[0].g == 0.0);
    CHECK_THROWS_AS(dos_window(s, 0.0, centers), ValidationError);

    const Spectrum cube_s = enumerate(cube(), 1024);
    const Staircase st(cube_s);
    for (double w : {1.0, 7.0, 13.3, 50.0, 0.37}) {
        const auto count = static_cast<std::size_t>(std::floor(1000.0 / w));
        const DosSeries tiles = dos_tiling(st, 0.0, w, count);
        double states = 0.0;
        for (const DosSample& x : tiles.samples) {
            states += x.g * w;
        }
        CHECK(std::llround(states) == st.evaluate(static_cast<double>(count) * w));
        CHECK(std::abs(states - static_cast<double>(st.evaluate(static_cast<double>(count) * w))) < 1e-6);
    }
}

TEST_CASE("window centers") {
    const auto overlap = window_centers(0, 10, 4);
    CHECK(overlap == std::vector<double>{0, 2, 4, 6, 8, 10});
    const auto tiles = window_centers(0, 10, 4, WindowLayout::tiling);
    CHECK(tiles == std::vector<double>{2, 6, 10});
}

TEST_CASE("lifting degeneracies leaves N unchanged away from the levels") {
    const Spectrum s = enumerate(cube(), 300);
    const double spread = 0.01;
    const Spectrum lifted = lift_degeneracies(s, spread);
    CHECK(lifted.total_states() == s.total_states());
    for (const Level& lv : lifted.levels()) {
        CHECK(lv.degeneracy == 1);
    }
    const Staircase a(s);
    const Staircase b(lifted);
    for (double e = 3.0; e <= 300.0; e += 0.25) {
        const double nearest = std::round(e);
        if (std::abs(e - nearest) > spread) {
            CHECK(a.evaluate(e) == b.evaluate(e));
        }
    }
}
