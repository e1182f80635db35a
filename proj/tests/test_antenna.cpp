#include <doctest.h>

#include <cmath>

#include "ondr/antenna.hpp"
#include "ondr/errors.hpp"
#include "ondr/rng.hpp"

using namespace ondr;

TEST_CASE("parses a minimal dB trace") {
    const auto trace = parse_touchstone("# MHZ S DB R 50\n915 -12.16 45.0\n920 -11.0 40.0\n");
    REQUIRE(trace.points.size() == 2);
    CHECK(trace.points[0].frequency_mhz == doctest::Approx(915.0));
    CHECK(trace.points[0].s11_db == doctest::Approx(-12.16));
    CHECK(trace.points[0].phase_deg == doctest::Approx(45.0));
}

TEST_CASE("a single data row is an empty trace") {
    CHECK_THROWS_AS(parse_touchstone("# MHZ S DB R 50\n915 -12.16 45.0\n"), EmptyTrace);
    CHECK_THROWS_AS(parse_touchstone("# MHZ S DB R 50\n"), EmptyTrace);
}

TEST_CASE("frequency units convert to MHz") {
    SUBCASE("GHz") {
        const auto trace =
            parse_touchstone("# GHZ S DB R 50\n0.915 -12.16 0\n0.920 -11 0\n");
        CHECK(trace.points[0].frequency_mhz == doctest::Approx(915.0));
    }
    SUBCASE("kHz") {
        const auto trace =
            parse_touchstone("# KHZ S DB R 50\n915000 -12.16 0\n920000 -11 0\n");
        CHECK(trace.points[0].frequency_mhz == doctest::Approx(915.0));
    }
    SUBCASE("Hz") {
        const auto trace =
            parse_touchstone("# HZ S DB R 50\n915000000 -12.16 0\n920000000 -11 0\n");
        CHECK(trace.points[0].frequency_mhz == doctest::Approx(915.0));
    }
    SUBCASE("default unit is GHz") {
        const auto trace = parse_touchstone("0.915 0.5 0\n0.920 0.4 0\n");
        CHECK(trace.points[0].frequency_mhz == doctest::Approx(915.0));
    }
}

TEST_CASE("RI and MA formats convert to dB magnitude") {
    // |0.1 + 0j| -> 20*log10(0.1) = -20 dB
    const auto ri = parse_touchstone("# MHZ S RI R 50\n915 0.1 0.0\n920 0.2 0.0\n");
    CHECK(ri.points[0].s11_db == doctest::Approx(-20.0));

    const auto ma = parse_touchstone("# MHZ S MA R 50\n915 0.1 10\n920 0.2 10\n");
    CHECK(ma.points[0].s11_db == doctest::Approx(-20.0));
    CHECK(ma.points[0].phase_deg == doctest::Approx(10.0));
}

TEST_CASE("comments and blank lines are ignored") {
    const auto trace = parse_touchstone(
        "! vendor sweep\n# MHZ S DB R 50\n\n915 -12 0 ! inline comment\n\n920 -11 0\n");
    CHECK(trace.points.size() == 2);
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse_touchstone("# MHZ X DB R 50\n915 -12 0\n920 -11 0\n"),
                    MalformedOptionLine);
    CHECK_THROWS_AS(parse_touchstone("# MHZ S DB R\n915 -12 0\n920 -11 0\n"),
                    MalformedOptionLine);
    CHECK_THROWS_AS(parse_touchstone("# MHZ S DB R 50 BOGUS\n915 -12 0\n920 -11 0\n"),
                    MalformedOptionLine);
    CHECK_THROWS_AS(parse_touchstone("[Version] 2.0\n# MHZ S DB R 50\n915 -12 0\n"),
                    MalformedOptionLine);
    CHECK_THROWS_AS(parse_touchstone("# MHZ S DB R 50\n915 -12\n920 -11 0\n"),
                    MalformedDataLine);
    CHECK_THROWS_AS(parse_touchstone("# MHZ S DB R 50\n915 abc 0\n920 -11 0\n"),
                    MalformedDataLine);
    CHECK_THROWS_AS(parse_touchstone("# MHZ S DB R 50\n920 -11 0\n915 -12 0\n"),
                    NonMonotoneFrequency);
    CHECK_THROWS_AS(parse_touchstone("# MHZ S DB R 50\n915 -12 0\n915 -11 0\n"),
                    NonMonotoneFrequency);
}

TEST_CASE("min s11 picks the lowest frequency on ties") {
    const auto trace = parse_touchstone(
        "# MHZ S DB R 50\n905 -5 0\n910 -9 0\n920 -9 0\n925 -5 0\n");
    const auto at_min = min_s11(trace);
    CHECK(at_min.frequency_mhz == doctest::Approx(910.0));
    CHECK(at_min.s11_db == doctest::Approx(-9.0));

    const auto flat = parse_touchstone("# MHZ S DB R 50\n900 -5 0\n910 -5 0\n920 -5 0\n");
    CHECK(min_s11(flat).frequency_mhz == doctest::Approx(900.0));
}

TEST_CASE("bandwidth crossings by hand interpolation") {
    // (900,-8) (905,-11) (915,-13) (925,-11) (930,-8), threshold -10:
    // crossings at 903.333 and 926.667
    const auto trace = parse_touchstone(
        "# MHZ S DB R 50\n900 -8 0\n905 -11 0\n915 -13 0\n925 -11 0\n930 -8 0\n");
    const auto bands = bandwidth_below(trace, -10.0);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].lo_mhz == doctest::Approx(903.333).epsilon(1e-5));
    CHECK(bands[0].hi_mhz == doctest::Approx(926.667).epsilon(1e-5));
    CHECK(bands[0].width_mhz() == doctest::Approx(23.333).epsilon(1e-4));
}

TEST_CASE("no band when the trace never dips below threshold") {
    const auto trace = parse_touchstone("# MHZ S DB R 50\n900 -5 0\n910 -5 0\n920 -5 0\n");
    CHECK(bandwidth_below(trace, -10.0).empty());
    const auto summary = summarize(trace, -10.0);
    CHECK(summary.bands.empty());
    CHECK(summary.min_s11_db == doctest::Approx(-5.0));
}

TEST_CASE("edges below threshold open bands at the edge frequency") {
    const auto trace = parse_touchstone("# MHZ S DB R 50\n900 -12 0\n910 -11 0\n920 -9 0\n");
    const auto bands = bandwidth_below(trace, -10.0);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].lo_mhz == doctest::Approx(900.0));
    CHECK(bands[0].hi_mhz == doctest::Approx(915.0)); // interpolated -10 crossing
}

TEST_CASE("multiple disjoint bands stay ordered") {
    const auto trace = parse_touchstone(
        "# MHZ S DB R 50\n900 -8 0\n905 -12 0\n910 -8 0\n915 -8 0\n920 -12 0\n925 -8 0\n");
    const auto bands = bandwidth_below(trace, -10.0);
    REQUIRE(bands.size() == 2);
    CHECK(bands[0].hi_mhz < bands[1].lo_mhz);
    for (const auto& band : bands) {
        CHECK(band.lo_mhz < band.hi_mhz);
    }
}

TEST_CASE("samples exactly at the threshold are band boundaries") {
    const auto trace = parse_touchstone(
        "# MHZ S DB R 50\n900 -8 0\n908.6 -10 0\n915 -12.16 0\n921.5 -10 0\n"
        "928 -8 0\n");
    const auto bands = bandwidth_below(trace, -10.0);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].lo_mhz == doctest::Approx(908.6));
    CHECK(bands[0].hi_mhz == doctest::Approx(921.5));
    CHECK(bands[0].width_mhz() == doctest::Approx(12.9));
}

TEST_CASE("interpolated crossings sit exactly on the threshold line") {
    Rng rng(0x5aa5ull);
    for (int round = 0; round < 200; ++round) {
        SParamTrace trace;
        double f = 900.0;
        for (int i = 0; i < 20; ++i) {
            trace.points.push_back({f, rng.uniform(-15.0, -5.0), 0.0});
            f += rng.uniform(0.5, 3.0);
        }
        const double threshold = -10.0;
        for (const Band& band : bandwidth_below(trace, threshold)) {
            for (double crossing : {band.lo_mhz, band.hi_mhz}) {
                // locate the segment containing the crossing and evaluate it
                for (std::size_t i = 1; i < trace.points.size(); ++i) {
                    const auto& a = trace.points[i - 1];
                    const auto& b = trace.points[i];
                    if (crossing >= a.frequency_mhz && crossing <= b.frequency_mhz) {
                        const double t = (crossing - a.frequency_mhz) /
                                         (b.frequency_mhz - a.frequency_mhz);
                        const double s = a.s11_db + t * (b.s11_db - a.s11_db);
                        const bool at_edge = crossing == trace.points.front().frequency_mhz ||
                                             crossing == trace.points.back().frequency_mhz;
                        if (!at_edge) {
                            CHECK(s == doctest::Approx(threshold).epsilon(1e-9));
                        }
                        break;
                    }
                }
            }
        }
    }
}

TEST_CASE("band widths are invariant under collinear sample insertion") {
    Rng rng(0xc011ull);
    for (int round = 0; round < 100; ++round) {
        SParamTrace trace;
        double f = 900.0;
        for (int i = 0; i < 12; ++i) {
            trace.points.push_back({f, rng.uniform(-14.0, -6.0), 0.0});
            f += 2.0;
        }
        const auto original = bandwidth_below(trace, -10.0);

        // insert the midpoint of every segment; values stay collinear
        SParamTrace refined;
        for (std::size_t i = 0; i < trace.points.size(); ++i) {
            refined.points.push_back(trace.points[i]);
            if (i + 1 < trace.points.size()) {
                const auto& a = trace.points[i];
                const auto& b = trace.points[i + 1];
                refined.points.push_back({(a.frequency_mhz + b.frequency_mhz) / 2.0,
                                          (a.s11_db + b.s11_db) / 2.0, 0.0});
            }
        }
        const auto split = bandwidth_below(refined, -10.0);

        double original_total = 0.0, split_total = 0.0;
        for (const auto& band : original) original_total += band.width_mhz();
        for (const auto& band : split) split_total += band.width_mhz();
        CHECK(split_total == doctest::Approx(original_total).epsilon(1e-9));
    }
}

TEST_CASE("render/parse round trip preserves values") {
    Rng rng(0x0e11ull);
    SParamTrace trace;
    double f = 902.0;
    for (int i = 0; i < 40; ++i) {
        trace.points.push_back({f, rng.uniform(-20.0, -2.0), rng.uniform(-180.0, 180.0)});
        f += rng.uniform(0.1, 1.5);
    }
    const auto reparsed = parse_touchstone(render_touchstone(trace));
    REQUIRE(reparsed.points.size() == trace.points.size());
    for (std::size_t i = 0; i < trace.points.size(); ++i) {
        CHECK(reparsed.points[i].frequency_mhz ==
              doctest::Approx(trace.points[i].frequency_mhz).epsilon(1e-9));
        CHECK(reparsed.points[i].s11_db ==
              doctest::Approx(trace.points[i].s11_db).epsilon(1e-9));
    }
}

TEST_CASE("summary combines the minimum and the band list") {
    // symmetric parabola dipping to -14 dB at 915
    SParamTrace trace;
    for (double f = 905.0; f <= 925.01; f += 0.5) {
        const double s = -14.0 + 0.1 * (f - 915.0) * (f - 915.0);
        trace.points.push_back({f, s, 0.0});
    }
    const auto summary = summarize(trace, -10.0);
    CHECK(summary.min_s11_db == doctest::Approx(-14.0));
    CHECK(summary.min_frequency_mhz == doctest::Approx(915.0));
    REQUIRE(summary.bands.size() == 1);
    const auto direct = bandwidth_below(trace, -10.0);
    CHECK(summary.bands[0].lo_mhz == doctest::Approx(direct[0].lo_mhz));
    CHECK(summary.bands[0].hi_mhz == doctest::Approx(direct[0].hi_mhz));

    const std::string text = summary_text(summary);
    CHECK(text.find("-14.00 dB") != std::string::npos);
    const std::string machine = summary_machine(summary);
    CHECK(machine.find("min_db=-14.000000") != std::string::npos);
    CHECK(machine.find("band_lo=") != std::string::npos);
}
