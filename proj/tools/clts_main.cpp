#include <iostream>
#include <map>
#include <string>

#include <boost/program_options.hpp>

#include "clts/common/error.hpp"
#include "clts/pipeline/config.hpp"
#include "clts/pipeline/stages.hpp"

namespace po = boost::program_options;
using namespace clts::pipeline;

namespace {

using Command = StageRecord (*)(const RunConfig&, const RunContext&);

const std::map<std::string, Command> kCommands = {
    {"preprocess", cmd_preprocess}, {"generate", cmd_generate}, {"features", cmd_features},
    {"metrics", cmd_metrics},       {"stats", cmd_stats},       {"iaa", cmd_iaa},
    {"report", cmd_report},
};

void print_usage(std::ostream& out, const po::options_description& opt) {
    out << "usage: clts <command> --config FILE [options]\n"
        << "commands: preprocess generate features metrics stats iaa report\n\n"
        << opt << '\n';
}

void print_record(const std::string& name, const StageRecord& record) {
    std::cout << name << ": done";
    for (const auto& [key, value] : record.counts) std::cout << ' ' << key << '=' << value;
    std::cout << '\n';
    for (const auto& [key, value] : record.errors) std::cerr << "  " << key << ": " << value << '\n';
}

}  // namespace

int main(int argc, char* argv[]) {
    po::options_description opt("Options");
    opt.add_options()
        ("help,h", "show this message")
        ("version", "show version")
        ("config,c", po::value<std::string>(), "run configuration (TOML)")
        ("out,o", po::value<std::string>(), "run directory, overriding output_dir")
        ("resume", po::bool_switch(), "continue from artifacts of an earlier run")
        ("seed", po::value<std::uint64_t>(), "random seed, overriding the config")
        ("workers", po::value<std::size_t>(), "worker threads, overriding the config");
    po::options_description hidden;
    hidden.add_options()("command", po::value<std::string>());
    po::options_description all;
    all.add(opt).add(hidden);
    po::positional_options_description positional;
    positional.add("command", 1);

    po::variables_map args;
    try {
        po::store(po::command_line_parser(argc, argv).options(all).positional(positional).run(), args);
        po::notify(args);
    } catch (const po::error& e) {
        std::cerr << "clts: " << e.what() << '\n';
        print_usage(std::cerr, opt);
        return 1;
    }
    if (args.count("version")) {
        std::cout << "clts " << CLTS_VERSION << '\n';
        return 0;
    }
    if (args.count("help") || !args.count("command")) {
        print_usage(args.count("help") ? std::cout : std::cerr, opt);
        return args.count("help") ? 0 : 1;
    }
    const auto name = args["command"].as<std::string>();
    const auto command = kCommands.find(name);
    if (command == kCommands.end()) {
        std::cerr << "clts: unknown command '" << name << "'\n";
        print_usage(std::cerr, opt);
        return 1;
    }
    if (!args.count("config")) {
        std::cerr << "clts: --config is required\n";
        return 1;
    }

    try {
        auto config = load_config(args["config"].as<std::string>());
        if (args.count("out")) config.output_dir = args["out"].as<std::string>();
        if (args.count("seed")) config.seed = args["seed"].as<std::uint64_t>();
        if (args.count("workers")) config.workers = args["workers"].as<std::size_t>();
        config.validate();
        auto ctx = RunContext::from_config(config);
        ctx.resume = args["resume"].as<bool>();
        print_record(name, command->second(config, ctx));
    } catch (const clts::MissingArtifact& e) {
        std::cerr << "clts " << name << ": missing artifact: " << e.what() << '\n';
        return e.exit_code();
    } catch (const clts::Error& e) {
        std::cerr << "clts " << name << ": " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "clts " << name << ": " << e.what() << '\n';
        return static_cast<int>(clts::ErrorCategory::data);
    }
    return 0;
}
