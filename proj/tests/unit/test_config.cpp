#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "molcoop/config.hpp"
#include "molcoop/error.hpp"

using namespace molcoop;

namespace {

std::string error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key_path();
  }
  return "<no error>";
}

NetworkConfig as_network(const Scenario& s) { return std::get<NetworkConfig>(s); }

}  // namespace

TEST_CASE("minimal file gets defaults") {
  const auto cfg = parse_config(R"({
    "molecules": 3e9,
    "relays": [{"d_sr_um": 10, "d_rd_um": 20}],
    "direct_d_um": 25
  })");
  const auto& sc = cfg.scenario;
  CHECK(sc.prior == 0.5);
  CHECK(sc.medium.diffusion_coefficient() == 1e-6);
  CHECK(sc.mui.mean() == 4e16);
  CHECK(sc.mui.stddev() == doctest::Approx(1.2e16).epsilon(1e-15));
  CHECK(sc.split == SplitRule::uniform);
  CHECK(sc.relays.size() == 1);
  CHECK(sc.relays[0].relay_mui.mean() == 4e16);
  CHECK(sc.miso_emitters == 2);
  CHECK(sc.simo_receivers == 2);
  CHECK_FALSE(cfg.sweep.has_value());
  const auto net = build_network(sc, 1, sc.molecules);
  CHECK(net.relays[0].source_to_relay.distance_cm() == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(net.direct->distance_cm() == doctest::Approx(2.5e-3).epsilon(1e-15));
  CHECK(net.source.molecules() == 1.5e9);  // uniform split over source + 1 relay
}

TEST_CASE("errors name the offending key") {
  CHECK(error_key(R"({"molecules": 1e9, "relays": [{"d_sr_um": 10, "d_rd_um": 20}],
                     "mui": {"mean": 4e16, "stddev": 0}})") == "mui.stddev");
  CHECK(error_key(R"({"molecules": 1e9, "relays": [{"d_sr_um": 10, "d_rd_um": 20}],
                     "mui": {"mean": 4e16, "cov": 0}})") == "mui.cov");
  CHECK(error_key(R"({"molecules": 1e9, "relays": [{"d_sr_um": 10, "d_rd_um": 20},
                     {"d_sr_um": 10}]})") == "relays[1].d_rd_um");
  CHECK(error_key(R"({"molecules": 1e9, "relays": [{"d_sr_um": 10, "d_rd_um": 20,
                     "mui_rd": {"mean": 1, "stddev": -1}}]})") == "relays[0].mui_rd.stddev");
  CHECK(error_key(R"({"relays": [{"d_sr_um": 10, "d_rd_um": 20}]})") == "molecules");
  CHECK(error_key(R"({"molecules": 1e9})") == "relays");
  CHECK(error_key(R"({"molecules": 1e9, "relays": [{"d_sr_um": 10, "d_rd_um": 20}],
                     "colour": "blue"})") == "colour");
  CHECK(error_key(R"({"molecules": 1e9, "relays": [{"d_sr_um": 10, "d_rd_um": 20, "x": 1}]})") ==
        "relays[0].x");
  CHECK(error_key(R"({"molecules": 1e9, "beta": 1.0, "relays": [{"d_sr_um": 10, "d_rd_um": 20}]})") ==
        "beta");
  CHECK(error_key(R"({"molecules": 1e9, "relays": [{"d_sr_um": -10, "d_rd_um": 20}]})") ==
        "relays[0].d_sr_um");
  CHECK(error_key(R"({"molecules": 1e9, "split_rule": "explicit",
                     "relays": [{"d_sr_um": 10, "d_rd_um": 20}]})") == "relays[0].molecules");
  CHECK(error_key("{not json") == "<root>");
  CHECK(error_key("[1, 2]") == "<root>");
}

TEST_CASE("sweep validation") {
  const std::string head = R"({"molecules": 1e9, "relays": [{"d_sr_um": 10, "d_rd_um": 20}], )";
  CHECK(error_key(head + R"("sweep": {"parameter": "total_molecules", "min": 2e9, "max": 1e9}})") ==
        "sweep.max");
  CHECK(error_key(head + R"("sweep": {"parameter": "total_molecules", "min": 1e9, "max": 2e9,
                            "points": 1}})") == "sweep.points");
  CHECK(error_key(head + R"("sweep": {"parameter": "total_molecules", "min": 1e9, "max": 2e9,
                            "monte_carlo": true, "trials": 999}})") == "sweep.trials");
  CHECK(error_key(head + R"("sweep": {"parameter": "distance", "min": 10, "max": 20}})") ==
        "direct_d_um");
  CHECK(error_key(head + R"("sweep": {"parameter": "total_molecules", "min": 1e9, "max": 2e9,
                            "systems": ["cooperative", "simo"]}})") == "direct_d_um");
  const auto defaults = parse_config(head + R"("sweep": {"parameter": "total_molecules", "min": 1e9, "max": 2e9}})");
  CHECK(defaults.sweep->systems == std::vector<System>{System::cooperative});
  CHECK(error_key(head + R"("sweep": {"parameter": "speed", "min": 10, "max": 20}})") ==
        "sweep.parameter");
  CHECK(error_key(head + R"("sweep": {"parameter": "total_molecules", "min": 1e9, "max": 2e9,
                            "systems": ["cooperative", "mimo"]}})") == "sweep.systems[1]");
  CHECK(error_key(head + R"("sweep": {"parameter": "total_molecules", "min": 1e9, "max": 2e9,
                            "relay_counts": [2]}})") == "sweep.relay_counts[0]");
  CHECK(error_key(head + R"("sweep": {"parameter": "total_molecules", "min": 1e9, "max": 2e9,
                            "detector": "optimal"}})") == "sweep.detector");
  CHECK(error_key(head + R"("sweep": {"parameter": "total_molecules", "min": 1e9, "max": 2e9,
                            "seed": -4}})") == "sweep.seed");
}

TEST_CASE("MUI from interferers") {
  const auto cfg = parse_config(R"({
    "molecules": 1e9, "relays": [{"d_sr_um": 10, "d_rd_um": 20}],
    "mui": {"interferers": {"count": 5, "molecules": 3e9, "distance_um": 30}, "cov": 0.3}
  })");
  CHECK(cfg.scenario.mui.mean() == doctest::Approx(4.0897602693014256e16).epsilon(1e-13));
  CHECK(std::abs(cfg.scenario.mui.mean() / 4e16 - 1) < 0.03);
}

TEST_CASE("molecule split rules") {
  const std::string relays =
      R"("relays": [{"d_sr_um": 10, "d_rd_um": 20, "molecules": 5e8}, {"d_sr_um": 10, "d_rd_um": 20, "molecules": 7e8}], "direct_d_um": 30)";
  SUBCASE("uniform") {
    const auto sc = parse_config(R"({"molecules": 3e9, )" + relays + "}").scenario;
    const auto net = as_network(build_scenario(sc, System::cooperative, 2, 3e9, 30));
    CHECK(net.source.molecules() == 1e9);
    CHECK(net.relays[1].retransmission.molecules() == 1e9);
    const auto miso = std::get<MisoSetup>(build_scenario(sc, System::miso, 0, 3e9, 30));
    CHECK(miso.emitters.size() == 2);
    CHECK(miso.emitters[0].emission.molecules() == 1.5e9);
    const auto simo = std::get<SimoSetup>(build_scenario(sc, System::simo, 0, 3e9, 30));
    CHECK(simo.source.molecules() == 3e9);
    CHECK(simo.receivers.size() == 2);
    const auto siso = std::get<SisoSetup>(build_scenario(sc, System::siso, 0, 3e9, 30));
    CHECK(siso.source.molecules() == 3e9);
  }
  SUBCASE("per node") {
    const auto sc = parse_config(R"({"molecules": 3e9, "split_rule": "per_node", )" + relays + "}").scenario;
    const auto net = as_network(build_scenario(sc, System::cooperative, 1, 2e9, 30));
    CHECK(net.source.molecules() == 2e9);
    CHECK(net.relays.size() == 1);
    CHECK(net.relays[0].retransmission.molecules() == 2e9);
  }
  SUBCASE("explicit") {
    const auto sc = parse_config(R"({"molecules": 3e9, "split_rule": "explicit",
                                     "source_molecules": 1e9, )" + relays + "}").scenario;
    const auto net = as_network(build_scenario(sc, System::cooperative, 2, 3e9, 30));
    CHECK(net.source.molecules() == 1e9);
    CHECK(net.relays[0].retransmission.molecules() == 5e8);
    CHECK(net.relays[1].retransmission.molecules() == 7e8);
    const auto siso = std::get<SisoSetup>(build_scenario(sc, System::siso, 0, 3e9, 30));
    CHECK(siso.source.molecules() == doctest::Approx(2.2e9).epsilon(1e-15));
  }
}

TEST_CASE("distance scaling moves the whole geometry") {
  const auto sc = parse_config(R"({"molecules": 1e9, "direct_d_um": 30,
      "relays": [{"d_sr_um": 12, "d_rd_um": 18}]})").scenario;
  const auto net = as_network(build_scenario(sc, System::cooperative, 1, 1e9, 15));
  CHECK(net.relays[0].source_to_relay.distance_um() == 6.0);
  CHECK(net.relays[0].relay_to_destination.distance_um() == 9.0);
  CHECK(net.direct->distance_um() == 15.0);
  const auto siso = std::get<SisoSetup>(build_scenario(sc, System::siso, 0, 1e9, 15));
  CHECK(siso.link.distance_um() == 15.0);
}

TEST_CASE("baselines require a direct distance") {
  const auto sc = parse_config(R"({"molecules": 1e9, "relays": [{"d_sr_um": 12, "d_rd_um": 18}]})").scenario;
  CHECK_THROWS_AS(build_scenario(sc, System::siso, 0, 1e9, 30), ConfigError);
  CHECK_NOTHROW(build_scenario(sc, System::cooperative, 1, 1e9, 0));
}

// Constants table from README.md ("Experiment presets").
TEST_CASE("preset fidelity") {
  for (auto name : preset_names()) {
    const auto cfg = parse_config(preset_text(name));
    const auto& sc = cfg.scenario;
    CAPTURE(name);
    CHECK(sc.prior == 0.5);
    CHECK(sc.medium.diffusion_coefficient() == 1e-6);
    CHECK(sc.mui.mean() == 4e16);
    CHECK(sc.mui.stddev() == 0.3 * 4e16);
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->trials == 100000);
    CHECK(cfg.sweep->seed == 2017);
  }
  const auto a = parse_config(preset_text("fig2a"));
  CHECK(a.scenario.split == SplitRule::per_node);
  CHECK(a.scenario.relays.size() == 3);
  for (const auto& r : a.scenario.relays) {
    CHECK(r.d_sr_um == 10);
    CHECK(r.d_rd_um == 20);
  }
  CHECK(*a.scenario.direct_d_um == 25);
  CHECK(a.sweep->parameter == SweptParameter::total_molecules);
  CHECK(a.sweep->min == 1e9);
  CHECK(a.sweep->max == 1e11);
  CHECK(a.sweep->relay_counts == std::vector<int>{1, 2, 3});
  CHECK(a.sweep->systems == std::vector<System>{System::cooperative, System::siso});
  const auto net = build_network(a.scenario, 3, 1e9);
  CHECK(net.relays[2].source_to_relay.distance_um() == 10);
  CHECK(net.relays[2].relay_to_destination.distance_um() == 20);

  const auto b = parse_config(preset_text("fig2b"));
  CHECK(b.scenario.split == SplitRule::uniform);
  CHECK(b.scenario.molecules == 1e9);
  CHECK(*b.scenario.direct_d_um == 30);
  CHECK(b.sweep->parameter == SweptParameter::distance);
  CHECK(b.sweep->relay_counts == std::vector<int>{2});

  const auto c = parse_config(preset_text("fig2c"));
  CHECK(c.scenario.split == SplitRule::uniform);
  CHECK(*c.scenario.direct_d_um == 30);
  CHECK(c.sweep->parameter == SweptParameter::total_molecules);
  CHECK(c.sweep->relay_counts == std::vector<int>{2});
  CHECK_THROWS_AS(preset_text("fig3"), ConfigError);
}
