#include "epcaddr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epcaddr/error.hpp"
#include "epcaddr/harness.hpp"
#include "epcaddr/ons.hpp"

namespace epcaddr::cli {

namespace {

/// Raised by command bodies; run() prints "<stage>: <message>" and exits with `code`.
struct StageFailure {
    int code;
    std::string stage;
    std::string message;
};

[[noreturn]] void usage_failure(std::string message)
{
    throw StageFailure{kUsage, "usage", std::move(message)};
}

template <typename Fn>
auto in_stage(int code, const char* stage, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const Error& e) {
        throw StageFailure{code, stage, e.what()};
    }
}

std::optional<OutputFormat> format_from_name(std::string_view name)
{
    if (name == "text")
        return OutputFormat::text;
    if (name == "structured")
        return OutputFormat::structured;
    return std::nullopt;
}

AddressingMethodId method_or_usage(const std::string& name)
{
    const auto id = method_from_name(name);
    if (!id) {
        std::string known;
        for (auto m : kAllMethods)
            known += (known.empty() ? "" : ", ") + std::string(method_name(m));
        usage_failure("unknown method '" + name + "' (expected one of " + known + ")");
    }
    return *id;
}

std::uint64_t salt_or_usage(const std::string& text)
{
    EpcValue v;
    try {
        v = parse_number(text);
    } catch (const Error& e) {
        usage_failure(std::string("--salt: ") + e.what());
    }
    if (bit_length(v) > 64)
        usage_failure("--salt must fit in 64 bits");
    return low64(v);
}

IdStandard standard_or_usage(const std::string& text)
{
    if (text == "epc")
        return IdStandard::epc;
    if (text == "iso")
        return IdStandard::iso;
    usage_failure("--standard must be 'epc' or 'iso'");
}

struct EpcInput {
    std::string text;
    unsigned bits = 0;
    std::string serial;
};

/// Tag URI, or a decimal / 0x-hex number taken as a raw EPC.
Epc parse_input(const EpcInput& in)
{
    return in_stage(kParseError, "parse", [&] {
        if (in.text.starts_with("urn:"))
            return parse_tag_uri(in.text);
        std::optional<EpcValue> serial;
        if (!in.serial.empty())
            serial = parse_number(in.serial);
        return Epc::raw(parse_number(in.text), in.bits, serial);
    });
}

OnsRegistry registry_from(const std::optional<std::filesystem::path>& path)
{
    if (!path)
        usage_failure("no registry given (use --registry or set registry_path in $EPCADDR_CONFIG)");
    return in_stage(kResolveError, "resolve", [&] { return load_registry(*path); });
}

std::string join_lines(const nlohmann::ordered_json& j)
{
    return j.dump(2) + "\n";
}

void print_epc(std::ostream& out, const Epc& epc, OutputFormat format)
{
    nlohmann::ordered_json j;
    j["scheme"] = std::string(scheme_name(epc.scheme));
    j["declared_bits"] = epc.declared_bits;
    j["value"] = epc.value ? nlohmann::ordered_json(to_hex(*epc.value)) : nlohmann::ordered_json();
    j["value_decimal"] = epc.value ? nlohmann::ordered_json(to_decimal(*epc.value)) : nlohmann::ordered_json();
    j["serial_number"] = epc.serial_number ? nlohmann::ordered_json(to_decimal(*epc.serial_number)) : nlohmann::ordered_json();
    if (epc.tag) {
        j["filter"] = epc.tag->filter;
        j["company_prefix"] = epc.tag->company_prefix;
        j["reference"] = epc.tag->reference;
    }
    if (epc.scheme == Scheme::sgtin96 && epc.value) {
        const auto f = decode_sgtin96(*epc.value);
        j["partition"] = f.partition;
    }
    j["uri"] = epc.uri ? nlohmann::ordered_json(*epc.uri) : nlohmann::ordered_json();

    if (format == OutputFormat::structured) {
        out << join_lines(j);
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (value.is_null())
            continue;
        out << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
}

void write_output(std::ostream& out, const std::string& text, const std::string& output_path)
{
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(output_path);
    if (!file)
        usage_failure("cannot write " + output_path);
    file << text;
}

} // namespace

CliConfig load_config(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw Error(ErrorCode::Unreadable, file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedEntry, file.string() + ": " + e.what());
    }
    if (!j.is_object())
        throw Error(ErrorCode::MalformedEntry, file.string() + ": config must be a JSON object");

    CliConfig config;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_string())
            throw Error(ErrorCode::MalformedEntry, key + " must be a string");
        const auto text = value.get<std::string>();
        if (key == "registry_path") {
            config.registry_path = text;
        } else if (key == "default_method") {
            const auto id = method_from_name(text);
            if (!id)
                throw Error(ErrorCode::MalformedEntry, "unknown default_method '" + text + "'");
            config.default_method = *id;
        } else if (key == "output_format") {
            const auto f = format_from_name(text);
            if (!f)
                throw Error(ErrorCode::MalformedEntry, "output_format must be text or structured");
            config.output_format = *f;
        } else {
            throw Error(ErrorCode::MalformedEntry, "unknown config key '" + key + "'");
        }
    }
    return config;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::filesystem::path>& config_file)
{
    CliConfig config;
    if (config_file) {
        try {
            config = load_config(*config_file);
        } catch (const Error& e) {
            err << "config: " << e.what() << '\n';
            return kUsage;
        }
    }

    CLI::App app{"Derive IPv6 addresses for EPC-tagged objects", "epcaddr"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name;
    app.add_option("--format", format_name, "Output format: text or structured");

    // derive
    auto* derive_cmd = app.add_subcommand("derive", "Derive the IPv6 address of one EPC");
    EpcInput derive_in;
    std::string ons_text;
    std::optional<std::filesystem::path> derive_registry;
    std::string method_text;
    std::string salt_text = "0";
    std::string standard_text = "epc";
    derive_cmd->add_option("epc", derive_in.text, "Tag URI, or EPC as decimal / 0x-hex")->required();
    auto* ons_opt = derive_cmd->add_option("--ons", ons_text, "ONS (or network prefix) IPv6 address");
    auto* reg_opt = derive_cmd->add_option("--registry", derive_registry, "ONS registry file");
    ons_opt->excludes(reg_opt);
    derive_cmd->add_option("--method", method_text, "Addressing method");
    derive_cmd->add_option("--salt", salt_text, "Salt operand for xor_pad / or_pad");
    derive_cmd->add_option("--standard", standard_text, "Identifier standard for iso_epc: epc or iso");
    derive_cmd->add_option("--bits", derive_in.bits, "Declared width of a numeric EPC (default: its bit length)");
    derive_cmd->add_option("--serial", derive_in.serial, "Serial number of a numeric EPC");

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "Parse an EPC and print its fields");
    EpcInput parse_in;
    parse_cmd->add_option("epc", parse_in.text, "Tag URI, or EPC as decimal / 0x-hex")->required();

    // resolve
    auto* resolve_cmd = app.add_subcommand("resolve", "Look up the ONS address for an EPC");
    EpcInput resolve_in;
    std::optional<std::filesystem::path> resolve_registry;
    resolve_cmd->add_option("epc", resolve_in.text, "Tag URI, or EPC as decimal / 0x-hex")->required();
    resolve_cmd->add_option("--registry", resolve_registry, "ONS registry file");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Evaluate addressing methods over a synthetic population");
    std::optional<std::filesystem::path> bench_registry;
    std::string bench_ons;
    std::string scheme_text = "raw";
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    std::optional<unsigned> width;
    bool fixed_width = false;
    std::string methods_text;
    unsigned threads = 1;
    std::size_t max_pairs = 1000;
    std::string output_path;
    std::string bench_salt = "0";
    std::string bench_standard = "epc";
    auto* bench_reg_opt = bench_cmd->add_option("--registry", bench_registry, "ONS registry file");
    bench_cmd->add_option("--ons", bench_ons, "Single ONS address instead of a registry")->excludes(bench_reg_opt);
    bench_cmd->add_option("--scheme", scheme_text, "raw, sgtin-96, giai-96 or sgln-96");
    bench_cmd->add_option("--count", count, "Population size");
    bench_cmd->add_option("--seed", seed, "Generator seed");
    bench_cmd->add_option("--width", width, "Serial width in bits");
    bench_cmd->add_flag("--fixed-width", fixed_width, "Force every serial to exactly --width bits");
    bench_cmd->add_option("--methods", methods_text, "Comma-separated method ids (default: all)");
    bench_cmd->add_option("--threads", threads, "Derivation threads");
    bench_cmd->add_option("--max-pairs", max_pairs, "Collision pairs listed per method in structured output");
    bench_cmd->add_option("--output", output_path, "Write the report to a file instead of stdout");
    bench_cmd->add_option("--salt", bench_salt, "Salt operand for xor_pad / or_pad");
    bench_cmd->add_option("--standard", bench_standard, "Identifier standard for iso_epc: epc or iso");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << '\n' << app.help();
        return kUsage;
    }

    try {
        if (!format_name.empty()) {
            const auto f = format_from_name(format_name);
            if (!f)
                usage_failure("--format must be text or structured");
            config.output_format = *f;
        }

        if (derive_cmd->parsed()) {
            const auto method = method_text.empty() ? config.default_method : method_or_usage(method_text);
            DeriveOptions options;
            options.salt = salt_or_usage(salt_text);
            options.standard = standard_or_usage(standard_text);
            const Epc epc = parse_input(derive_in);

            Ipv6Address anchor;
            if (!ons_text.empty()) {
                anchor = in_stage(kParseError, "parse", [&] { return parse_ipv6(ons_text); });
            } else {
                const auto registry = registry_from(derive_registry ? derive_registry : config.registry_path);
                anchor = in_stage(kResolveError, "resolve", [&] { return registry.resolve(epc); });
            }
            const auto addr = in_stage(kDeriveError, "derive", [&] { return derive(method, epc, anchor, options); });
            out << format_canonical(addr) << '\n';
            return kSuccess;
        }

        if (parse_cmd->parsed()) {
            print_epc(out, parse_input(parse_in), config.output_format);
            return kSuccess;
        }

        if (resolve_cmd->parsed()) {
            const Epc epc = parse_input(resolve_in);
            const auto registry = registry_from(resolve_registry ? resolve_registry : config.registry_path);
            const auto addr = in_stage(kResolveError, "resolve", [&] { return registry.resolve(epc); });
            out << format_canonical(addr) << '\n';
            return kSuccess;
        }

        if (bench_cmd->parsed()) {
            PopulationSpec spec;
            const auto scheme = scheme_from_name(scheme_text);
            if (!scheme)
                usage_failure("unknown scheme '" + scheme_text + "'");
            spec.scheme = *scheme;
            spec.count = count;
            spec.seed = seed;
            spec.serial_width_bits = width;
            spec.fixed_width = fixed_width;

            std::vector<AddressingMethodId> methods;
            if (methods_text.empty()) {
                methods.assign(kAllMethods.begin(), kAllMethods.end());
            } else {
                std::stringstream ss(methods_text);
                std::string name;
                while (std::getline(ss, name, ','))
                    methods.push_back(method_or_usage(name));
            }

            EvaluateOptions options;
            options.derive.salt = salt_or_usage(bench_salt);
            options.derive.standard = standard_or_usage(bench_standard);
            options.threads = std::max(1u, threads);
            options.max_listed_pairs = max_pairs;

            OnsRegistry registry;
            if (!bench_ons.empty()) {
                const auto ons = in_stage(kParseError, "parse", [&] { return parse_ipv6(bench_ons); });
                registry = OnsRegistry({{"*", ons}});
            } else {
                registry = registry_from(bench_registry ? bench_registry : config.registry_path);
            }

            const auto population = in_stage(kUsage, "generate", [&] { return generate_population(spec); });

            std::vector<BenchReport> reports;
            for (const auto method : methods) {
                try {
                    reports.push_back(evaluate(method, population, registry, options));
                } catch (const EvaluateError& e) {
                    const bool resolving = e.stage() == Stage::resolve;
                    throw StageFailure{resolving ? kResolveError : kDeriveError, resolving ? "resolve" : "derive",
                                       std::string(method_name(method)) + ": " + e.what()};
                }
            }

            if (config.output_format == OutputFormat::structured) {
                nlohmann::ordered_json doc;
                doc["population"] = to_json(spec);
                doc["reports"] = nlohmann::ordered_json::array();
                for (const auto& r : reports)
                    doc["reports"].push_back(to_json(r, population));
                write_output(out, join_lines(doc), output_path);
            } else {
                write_output(out, to_csv(reports), output_path);
            }
            return kSuccess;
        }
    } catch (const StageFailure& f) {
        err << f.stage << ": " << f.message << '\n';
        if (f.code == kUsage && f.stage == "usage")
            err << app.help();
        return f.code;
    }
    return kUsage;
}

} // namespace epcaddr::cli
