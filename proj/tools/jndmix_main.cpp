#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "jndmix/commands.hpp"
#include "jndmix/errors.hpp"

using jndmix::Command;
using jndmix::EstimatorKind;
using jndmix::Mode;
using jndmix::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"JND-bounded perceptual noise augmentation for IQA datasets"};
    app.require_subcommand(1);

    RunConfig config;

    const std::map<std::string, Mode> mode_names{
        {"jndmix", Mode::jndmix}, {"full-jnd", Mode::full_jnd}, {"gaussian", Mode::gaussian}};
    const std::map<std::string, EstimatorKind> estimator_names{
        {"chou-li", EstimatorKind::chou_li}, {"import", EstimatorKind::import_maps}};

    auto* estimate = app.add_subcommand("estimate-jnd", "Write one .jndm map per manifest image");
    estimate->add_option("--manifest", config.manifest, "Input manifest CSV")->required();
    estimate->add_option("--out", config.out_dir, "Output directory for .jndm files")->required();
    estimate->add_option("--gain", config.gain, "Scale estimated thresholds");
    estimate->add_option("--jobs", config.jobs, "Worker count");

    auto* augment = app.add_subcommand("augment", "Augment every manifest image deterministically");
    augment->add_option("--manifest", config.manifest, "Input manifest CSV")->required();
    augment->add_option("--maps", config.maps_dir, "Directory of <stem>.jndm maps");
    augment->add_option("--out", config.out_dir, "Output directory")->required();
    augment->add_option("--seed", config.master_seed, "Master seed");
    augment->add_option("--mode", config.mode, "Injection mode")
        ->transform(CLI::CheckedTransformer(mode_names));
    augment->add_option("--sigma", config.sigma, "Gaussian noise sigma (gaussian mode)");
    augment->add_option("--gain", config.gain, "Scale thresholds before injection");
    augment->add_option("--estimator", config.estimator, "Map source")
        ->transform(CLI::CheckedTransformer(estimator_names));
    augment->add_option("--jobs", config.jobs, "Worker count");

    auto* verify = app.add_subcommand("verify", "Check the JND bound on an augmented corpus");
    verify->add_option("--original", config.original, "Original manifest CSV")->required();
    verify->add_option("--augmented", config.augmented, "Augmented manifest CSV")->required();
    verify->add_option("--maps", config.maps_dir, "Directory of <stem>.jndm maps");
    verify->add_option("--gain", config.gain, "Scale thresholds before checking");
    verify->add_option("--estimator", config.estimator, "Map source")
        ->transform(CLI::CheckedTransformer(estimator_names));
    verify->add_option("--jobs", config.jobs, "Worker count");

    auto* split = app.add_subcommand("split", "Write seeded train/test split files");
    split->add_option("--manifest", config.manifest, "Input manifest CSV")->required();
    split->add_option("--out", config.out_dir, "Output directory")->required();
    split->add_option("--seed", config.master_seed, "Master seed");
    split->add_option("--fraction", config.fraction, "Train fraction in (0,1]");
    split->add_option("--repeats", config.repeats, "Number of split files");

    auto* metrics = app.add_subcommand("metrics", "Print srcc,plcc,n for aligned score files");
    metrics->add_option("--pred", config.pred, "Predicted scores, one per line")->required();
    metrics->add_option("--gt", config.gt, "Ground-truth scores, one per line")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return jndmix::kExitValidation;
    }

    try {
        if (estimate->parsed()) return jndmix::cmd_estimate_jnd(config, std::cerr);
        if (augment->parsed()) return jndmix::cmd_augment(config, std::cerr);
        if (verify->parsed()) return jndmix::cmd_verify(config, std::cout);
        if (split->parsed()) return jndmix::cmd_split(config, std::cerr);
        if (metrics->parsed()) return jndmix::cmd_metrics(config, std::cout, std::cerr);
    } catch (const jndmix::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return jndmix::kExitIo;
    } catch (const jndmix::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return jndmix::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return jndmix::kExitValidation;
    }
    return jndmix::kExitValidation;
}
