// rcla-lab: data ingestion, SwP index construction, historical backtest and
// RCLA pricing from the command line.
//
// exit codes: 0 ok, 2 usage, 3 data/io, 4 numerical, 1 anything else

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcla/json_io.hpp"
#include "rcla/rcla.hpp"

namespace {

using namespace rcla;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// write-then-rename, so an existing file is either replaced whole or untouched
void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(path + ": cannot open for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw IoError(path + ": write failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError(path + ": rename failed");
    }
}

// data to --out, or stdout; the summary goes wherever the data doesn't
void emit(const std::string& out_path, const std::string& content, const std::string& summary) {
    if (out_path.empty()) {
        std::cout << content << std::flush;
        std::cerr << summary << '\n';
    } else {
        write_atomically(out_path, content);
        std::cout << summary << " -> " << out_path << '\n';
    }
}

YearMonth to_month(const std::string& text) {
    const auto ym = YearMonth::parse(text);
    if (!ym) {
        throw std::invalid_argument("bad month '" + text + "', expected YYYY-MM");
    }
    return *ym;
}

std::vector<YearMonth> to_months(const std::vector<std::string>& texts) {
    std::vector<YearMonth> out;
    for (const auto& t : texts) {
        out.push_back(to_month(t));
    }
    return out;
}

struct Options {
    std::string returns;
    std::string cpi;
    std::vector<std::string> vintages;
    std::vector<double> rates;
    std::vector<double> ages;
    std::string horizon;
    std::string engine = "pde";
    std::size_t paths = McSettings{}.n_paths;
    double dt = McSettings{}.dt;
    std::uint64_t seed = McSettings{}.seed;
    bool simulate_deaths = false;
    std::size_t nodes = GridSpec{}.nodes;
    double age_step = GridSpec{}.age_step;
    std::string drift_mode = std::string(to_string(MarketParams{}.drift_mode));
    std::string out;

    MarketParams market;
    GompertzParams mortality;
    double notional = 100000.0;
};

MarketParams market_of(const Options& o) {
    MarketParams m = o.market;
    const auto mode = parse_drift_mode(o.drift_mode);
    if (!mode) {
        throw std::invalid_argument("bad --drift-mode '" + o.drift_mode + "'");
    }
    m.drift_mode = *mode;
    m.validate();
    return m;
}

EngineSettings engine_of(const Options& o) {
    EngineSettings s;
    const auto engine = parse_engine(o.engine);
    if (!engine) {
        throw std::invalid_argument("bad --engine '" + o.engine + "'");
    }
    s.engine = *engine;
    s.mc.n_paths = o.paths;
    s.mc.dt = o.dt;
    s.mc.seed = o.seed;
    s.mc.simulate_deaths = o.simulate_deaths;
    s.grid.nodes = o.nodes;
    s.grid.age_step = o.age_step;
    return s;
}

AlignedMarket load_market(const Options& o) {
    const auto returns = load_series(o.returns, SeriesKind::total_return_index);
    const auto cpi = load_series(o.cpi, SeriesKind::cpi_index);
    return align(returns, cpi);
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

int run_validate(const Options& o) {
    const auto returns = load_series(o.returns, SeriesKind::total_return_index);
    const auto cpi = load_series(o.cpi, SeriesKind::cpi_index);
    const auto window = common_window(returns, cpi);
    std::cout << "ok: returns " << returns.start.to_string() << ".." << returns.last().to_string() << " ("
              << returns.size() << " months), cpi " << cpi.start.to_string() << ".."
              << cpi.last().to_string() << " (" << cpi.size() << " months), growth window "
              << window.first.to_string() << ".." << window.last.to_string() << '\n';
    return 0;
}

int run_index(const Options& o) {
    if (o.vintages.empty()) {
        throw std::invalid_argument("index needs at least one --vintage");
    }
    if (o.out.empty()) {
        throw std::invalid_argument("index needs --out DIR");
    }
    auto market = load_market(o);
    if (!o.horizon.empty()) {
        market = market.slice(market.start, to_month(o.horizon));
    }
    const auto vintages = to_months(o.vintages);
    const std::vector<double> rates = o.rates.empty() ? std::vector<double>{0.07} : o.rates;
    const auto family = build_family(vintages, rates, market);
    std::filesystem::create_directories(o.out);
    std::size_t ruined = 0;
    for (const auto& row : family) {
        for (const auto& path : row) {
            write_atomically((std::filesystem::path(o.out) / family_file_name(path.config)).string(),
                             path_to_csv(path));
            ruined += path.ruin_month ? 1 : 0;
        }
    }
    std::cout << "index: " << vintages.size() * rates.size() << " paths through "
              << market.last().to_string() << ", " << ruined << " ruined -> " << o.out << '\n';
    return 0;
}

int run_backtest(const Options& o) {
    const auto market = load_market(o);
    const auto vintages = to_months(o.vintages.empty()
                                        ? std::vector<std::string>{"1970-01", "1973-01", "1976-01", "1979-01"}
                                        : o.vintages);
    const std::vector<double> rates =
        o.rates.empty() ? std::vector<double>{0.04, 0.05, 0.06, 0.07, 0.08, 0.09} : o.rates;
    const YearMonth horizon = o.horizon.empty() ? market.last() : to_month(o.horizon);
    const auto table = table1(market, vintages, rates, horizon);
    std::ostringstream csv;
    write_table_csv(csv, table);
    std::size_t ruined = 0;
    for (const auto& row : table.cells) {
        for (const auto& cell : row) {
            ruined += cell ? 1 : 0;
        }
    }
    emit(o.out, csv.str(),
         "backtest: " + std::to_string(rates.size()) + "x" + std::to_string(vintages.size()) + " cells, " +
             std::to_string(ruined) + " ruined through " + horizon.to_string());
    return 0;
}

int run_figure1(const Options& o) {
    auto market = load_market(o);
    if (!o.horizon.empty()) {
        market = market.slice(market.start, to_month(o.horizon));
    }
    const auto vintages = to_months(o.vintages.empty()
                                        ? std::vector<std::string>{"1970-01", "1973-01", "1976-01", "1979-01"}
                                        : o.vintages);
    if (o.rates.size() > 1) {
        throw std::invalid_argument("figure1 takes a single --rate");
    }
    const double rate = o.rates.empty() ? 0.07 : o.rates.front();
    const auto paths = figure1_data(market, vintages, rate);
    std::ostringstream csv;
    write_figure_csv(csv, paths);
    std::string summary = "figure1: rate " + format_rate(rate);
    for (const auto& p : paths) {
        summary += "; " + p.config.vintage.to_string() + " " +
                   (p.ruin_month ? "ruin " + p.ruin_month->to_string() : "level " + fixed(p.final_level(), 2));
    }
    emit(o.out, csv.str(), summary);
    return 0;
}

int run_price(const Options& o) {
    if (o.ages.size() > 1 || o.rates.size() > 1) {
        throw std::invalid_argument("price takes a single --age and --rate");
    }
    const RclaContract contract{o.ages.empty() ? RclaContract{}.purchase_age : o.ages.front(),
                                o.rates.empty() ? RclaContract{}.rate : o.rates.front(), o.notional};
    const auto result = price(contract, market_of(o), o.mortality, engine_of(o));
    std::string summary = "price: " + std::string(to_string(result.engine)) + " value " + fixed(result.value, 2);
    if (result.std_error) {
        summary += " (se " + fixed(*result.std_error, 2) + ")";
    }
    emit(o.out, to_json(result).dump(2) + "\n", summary);
    return 0;
}

int run_annuity(const Options& o) {
    const std::vector<double> ages = o.ages.empty() ? std::vector<double>{65.0} : o.ages;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::string summary = "annuity:";
    for (const double age : ages) {
        const double factor = annuity_factor(age, o.market.r_real, o.mortality);
        rows.push_back({{"age", age},
                        {"r", o.market.r_real},
                        {"gompertz_m", o.mortality.m},
                        {"gompertz_b", o.mortality.b},
                        {"factor", factor}});
        summary += " " + format_rate(age) + "->" + fixed(factor, 6);
    }
    emit(o.out, (ages.size() == 1 ? rows.front() : rows).dump(2) + "\n", summary);
    return 0;
}

int run_table2(const Options& o) {
    const std::vector<double> ages = o.ages.empty() ? std::vector<double>{50, 57, 62, 67, 75} : o.ages;
    const std::vector<double> rates = o.rates.empty() ? std::vector<double>{0.04, 0.05, 0.06, 0.07} : o.rates;
    const auto settings = engine_of(o);
    const auto table = table2(market_of(o), o.mortality, ages, rates, settings);
    std::ostringstream csv;
    write_table2_csv(csv, table);
    emit(o.out, csv.str(),
         "table2: " + std::string(to_string(settings.engine)) + ", " + std::to_string(rates.size()) + "x" +
             std::to_string(ages.size()) + " cells, drift " + o.drift_mode);
    return 0;
}

void add_data_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--returns", o.returns, "total-return index CSV (month,level)")->required();
    cmd->add_option("--cpi", o.cpi, "CPI level CSV (month,level)")->required();
}

void add_pricing_flags(CLI::App* cmd, Options& o, bool with_engine) {
    cmd->add_option("--r", o.market.r_real, "real riskless rate")->capture_default_str();
    cmd->add_option("--m", o.mortality.m, "Gompertz modal age")->capture_default_str();
    cmd->add_option("--b", o.mortality.b, "Gompertz dispersion")->capture_default_str();
    if (!with_engine) {
        return;
    }
    cmd->add_option("--mu", o.market.mu_real, "real expected return")->capture_default_str();
    cmd->add_option("--sigma", o.market.sigma, "volatility")->capture_default_str();
    cmd->add_option("--drift-mode", o.drift_mode, "risk_neutral | real_world")->capture_default_str();
    cmd->add_option("--engine", o.engine, "mc | pde | closed_form")->capture_default_str();
    cmd->add_option("--paths", o.paths, "Monte Carlo paths")->capture_default_str();
    cmd->add_option("--dt", o.dt, "Monte Carlo time step, years")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
    cmd->add_flag("--simulate-deaths", o.simulate_deaths, "draw death times instead of survival weights");
    cmd->add_option("--nodes", o.nodes, "finite-difference spatial intervals")->capture_default_str();
    cmd->add_option("--age-step", o.age_step, "finite-difference age step, years")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rcla-lab: SwP pseudo-index backtests and ruin-contingent life annuity pricing"};
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "load and check the return and CPI series");
    add_data_flags(validate, o);

    auto* index = app.add_subcommand("index", "write SwP pseudo-index paths, one CSV per vintage and rate");
    add_data_flags(index, o);
    index->add_option("--vintage", o.vintages, "launch month YYYY-MM (repeatable)");
    index->add_option("--rate", o.rates, "withdrawal rate as a decimal (repeatable, default 0.07)");
    index->add_option("--horizon", o.horizon, "last growth month YYYY-MM (default: end of data)");
    index->add_option("--out", o.out, "output directory");

    auto* backtest = app.add_subcommand("backtest", "ruin month by withdrawal rate and vintage");
    add_data_flags(backtest, o);
    backtest->add_option("--vintage", o.vintages, "launch month YYYY-MM (repeatable)");
    backtest->add_option("--rate", o.rates, "withdrawal rate as a decimal (repeatable)");
    backtest->add_option("--horizon", o.horizon, "last growth month YYYY-MM (default: end of data)");
    backtest->add_option("--out", o.out, "output CSV (default stdout)");

    auto* figure1 = app.add_subcommand("figure1", "pseudo-index trajectories by vintage at one rate");
    add_data_flags(figure1, o);
    figure1->add_option("--vintage", o.vintages, "launch month YYYY-MM (repeatable)");
    figure1->add_option("--rate", o.rates, "withdrawal rate as a decimal (default 0.07)");
    figure1->add_option("--horizon", o.horizon, "last growth month YYYY-MM (default: end of data)");
    figure1->add_option("--out", o.out, "output CSV (default stdout)");

    auto* price_cmd = app.add_subcommand("price", "value one RCLA contract");
    price_cmd->add_option("--age", o.ages, "purchase age")->expected(1);
    price_cmd->add_option("--rate", o.rates, "spending rate as a decimal")->expected(1);
    price_cmd->add_option("--notional", o.notional, "notional")->capture_default_str();
    add_pricing_flags(price_cmd, o, true);
    price_cmd->add_option("--out", o.out, "output JSON (default stdout)");

    auto* annuity = app.add_subcommand("annuity", "price of $1/yr of real lifetime income");
    annuity->add_option("--age", o.ages, "age (repeatable)");
    add_pricing_flags(annuity, o, false);
    annuity->add_option("--out", o.out, "output JSON (default stdout)");

    auto* table = app.add_subcommand("table2", "RCLA values by spending rate and purchase age");
    table->add_option("--age", o.ages, "purchase age (repeatable)");
    table->add_option("--rate", o.rates, "spending rate as a decimal (repeatable)");
    add_pricing_flags(table, o, true);
    table->add_option("--out", o.out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return run_validate(o);
        if (*index) return run_index(o);
        if (*backtest) return run_backtest(o);
        if (*figure1) return run_figure1(o);
        if (*price_cmd) return run_price(o);
        if (*annuity) return run_annuity(o);
        if (*table) return run_table2(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "invalid data: " << e.what() << '\n';
        return 3;
    } catch (const CoverageError& e) {
        std::cerr << "coverage error: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const GridError& e) {
        std::cerr << "grid error: " << e.what() << '\n';
        return 4;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
