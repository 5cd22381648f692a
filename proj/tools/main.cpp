#include <CLI11.hpp>

#include <iostream>

#include "app/commands.hpp"

int main(int argc, char** argv) {
    using tweetswing::app::RunConfig;

    CLI::App cli{"Sentiment-weighted election forecasting from short social-media messages"};
    cli.require_subcommand(1);
    RunConfig config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--terms", config.terms, "Term table CSV (term,kind,group,weight)");
        cmd->add_option("--out", config.out, "Output directory");
        cmd->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    };
    auto add_scoring = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", config.corpus, "Corpus file, one JSON record per line");
        cmd->add_option("--lexicon", config.lexicon, "Sentiment lexicon (tab-separated sections)");
        cmd->add_option("--from", config.from, "Window start, inclusive (ISO-8601 UTC)");
        cmd->add_option("--to", config.to, "Window end, exclusive (ISO-8601 UTC)");
        cmd->add_option("--threshold", config.threshold, "Keep tweets with combined score >= threshold");
        cmd->add_option("--exclusion", config.exclusion, "Multi-term exclusion: literal | cross_group");
    };
    auto add_aggregate = [&](CLI::App* cmd) {
        cmd->add_option("--totals-override", config.totals_override, "Use group totals from this CSV instead");
        cmd->add_option("--groups", config.groups, "Report groups (comma separated)")->delimiter(',');
    };
    auto add_forecast = [&](CLI::App* cmd) {
        cmd->add_option("--baseline", config.baseline, "2010 constituency results CSV");
        cmd->add_option("--national", config.national, "2010 national shares CSV");
    };

    auto* score = cli.add_subcommand("score", "Match, score and filter every tweet");
    add_common(score);
    add_scoring(score);
    score->add_option("--scored", config.scored, "Scored output path (default <out>/scored.csv)");

    auto* aggregate = cli.add_subcommand("aggregate", "Sum kept scores per group and normalize");
    add_common(aggregate);
    add_aggregate(aggregate);
    aggregate->add_option("--scored", config.scored, "Scored input (default <out>/scored.csv)");

    auto* forecast = cli.add_subcommand("forecast", "Apply uniform swing and tally seats");
    add_common(forecast);
    add_forecast(forecast);
    forecast->add_option("--shares", config.shares, "Share CSV (default <out>/shares.csv)");

    auto* run = cli.add_subcommand("run", "score, aggregate and forecast in one go");
    add_common(run);
    add_scoring(run);
    add_aggregate(run);
    add_forecast(run);

    CLI11_PARSE(cli, argc, argv);

    namespace app = tweetswing::app;
    if (score->parsed()) return app::cmd_score(config, std::cerr);
    if (aggregate->parsed()) return app::cmd_aggregate(config, std::cerr);
    if (forecast->parsed()) return app::cmd_forecast(config, std::cout, std::cerr);
    return app::cmd_run(config, std::cout, std::cerr);
}
