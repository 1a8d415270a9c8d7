#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tourroute/service.hpp"

namespace {

using tourroute::cli::OutputMode;

int serve(const std::string& listen, const std::filesystem::path& edges,
          const std::optional<std::filesystem::path>& names,
          const std::optional<std::filesystem::path>& ledger) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "error: --listen expects <addr:port>\n";
    return tourroute::cli::kExitInput;
  }
  auto host = listen.substr(0, colon);
  auto port = tourroute::detail::parse_int<int>(listen.substr(colon + 1));
  if (!port || *port < 0 || *port > 65535) {
    std::cerr << "error: bad port in --listen " << listen << '\n';
    return tourroute::cli::kExitInput;
  }

  std::optional<tourroute::Service> service;
  try {
    tourroute::ServiceOptions options;
    options.ledger_path = ledger;
    service.emplace(tourroute::cli::load_graph(edges, names), options);
  } catch (const tourroute::Error& e) {
    std::cerr << "error (" << tourroute::to_string(e.kind()) << "): " << e.what() << '\n';
    return tourroute::cli::kExitInput;
  }
  for (const auto& w : service->ledger()->warnings()) std::cerr << "warning: " << w << '\n';

  httplib::Server server;
  service->mount(server);
  int bound = *port;
  if (*port == 0) {
    bound = server.bind_to_any_port(host);
  } else if (!server.bind_to_port(host, *port)) {
    bound = -1;
  }
  if (bound < 0) {
    std::cerr << "error: cannot bind " << listen << '\n';
    return tourroute::cli::kExitInput;
  }

  // SIGINT/SIGTERM are handled on a dedicated thread so the server stops cleanly.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });

  std::cout << "listening on http://" << host << ':' << bound << std::endl;
  server.listen_after_bind();
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  return tourroute::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-cardinality route planning over attraction graphs"};
  app.require_subcommand(1);

  std::optional<std::filesystem::path> names;
  bool json_out = false;
  auto mode = [&] { return json_out ? OutputMode::Json : OutputMode::Table; };

  std::filesystem::path edges;
  auto* validate = app.add_subcommand("validate", "Check an edge table and report connectivity");
  validate->add_option("edges", edges, "Edge table (u v meters minutes)")->required();
  validate->add_option("--names", names, "Registry file (id<TAB>label)");

  tourroute::cli::RouteOptions route_opt;
  auto* route = app.add_subcommand("route", "Best route, or every route with --all");
  route->add_option("edges", route_opt.edges, "Edge table")->required();
  route->add_option("--start", route_opt.start, "Start node id")->required();
  route->add_option("--end", route_opt.end, "End node id")->required();
  route->add_option("--visit", route_opt.visit,
                    "Total nodes on the route, both endpoints included (10 attractions between "
                    "a start and an end is --visit 11)")
      ->required();
  route->add_option("--metric", route_opt.metric, "meters | minutes")->capture_default_str();
  route->add_flag("--all", route_opt.all, "List every route, sorted by cost");
  route->add_flag("--no-prune", route_opt.no_prune, "Disable incumbent pruning in best mode");
  route->add_flag("--allow-large", route_opt.allow_large, "Allow --all on graphs above 24 nodes");
  route->add_option("--names", names, "Registry file (id<TAB>label)");
  route->add_flag("--json", json_out, "Emit a JSON document");

  std::string ap_metric = "minutes";
  auto* all_pairs = app.add_subcommand("all-pairs", "All-pairs shortest distances (Floyd-Warshall)");
  all_pairs->add_option("edges", edges, "Edge table")->required();
  all_pairs->add_option("--metric", ap_metric, "meters | minutes")->capture_default_str();
  all_pairs->add_flag("--json", json_out, "Emit a JSON document");

  std::filesystem::path requests;
  std::optional<std::filesystem::path> occupancy;
  auto* assign = app.add_subcommand("assign", "Assign visitor groups to low-overlap routes");
  assign->add_option("edges", edges, "Edge table")->required();
  assign->add_option("requests", requests, "Requests file (group_id size start end k metric epsilon)")
      ->required();
  assign->add_option("occupancy", occupancy, "Occupancy file (node count)");
  assign->add_option("--names", names, "Registry file (id<TAB>label)");
  assign->add_flag("--json", json_out, "Emit a JSON document");

  std::filesystem::path meters_file, minutes_file;
  auto* merge = app.add_subcommand("merge", "Combine a metres table and a minutes table");
  merge->add_option("meters", meters_file, "u v meters")->required();
  merge->add_option("minutes", minutes_file, "u v minutes")->required();

  std::string listen = "127.0.0.1:8080";
  std::optional<std::filesystem::path> ledger;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--listen", listen, "addr:port (port 0 picks a free port)")->capture_default_str();
  serve_cmd->add_option("--edges", edges, "Edge table")->required();
  serve_cmd->add_option("--names", names, "Registry file (id<TAB>label)");
  serve_cmd->add_option("--ledger", ledger, "Occupancy event log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    auto code = app.exit(e);
    return code == 0 ? 0 : tourroute::cli::kExitInput;
  }

  if (*validate) return tourroute::cli::cmd_validate(edges, names, std::cout, std::cerr);
  if (*route) {
    route_opt.names = names;
    route_opt.output = mode();
    return tourroute::cli::cmd_route(route_opt, std::cout, std::cerr);
  }
  if (*all_pairs) return tourroute::cli::cmd_all_pairs(edges, ap_metric, mode(), std::cout, std::cerr);
  if (*assign) {
    return tourroute::cli::cmd_assign(edges, requests, occupancy, names, mode(), std::cout, std::cerr);
  }
  if (*merge) return tourroute::cli::cmd_merge(meters_file, minutes_file, std::cout, std::cerr);
  if (*serve_cmd) return serve(listen, edges, names, ledger);
  return tourroute::cli::kExitInput;
}
