// HTTP front end for the prover game. Every route is delegated to
// GameService::handle; this file only binds sockets and sets headers.

#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "chromatic/service.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Prover game service"};
  std::string host = "127.0.0.1", origin = "*", transcripts;
  int port = 8080, threads = 4;
  std::size_t budget = 0;
  double delta = chromatic::GeometryOptions{}.delta;
  app.add_option("--host", host);
  app.add_option("--port", port)->check(CLI::Range(0, 65535));
  app.add_option("--cors-origin", origin, "value of Access-Control-Allow-Origin");
  app.add_option("--transcripts", transcripts, "directory for per-game append-only transcripts");
  app.add_option("--budget", budget, "facet budget");
  app.add_option("--delta", delta, "geometry own-id weight offset");
  app.add_option("--threads", threads)->check(CLI::Range(1, 64));
  CLI11_PARSE(app, argc, argv);

  chromatic::ServiceOptions options;
  if (budget > 0) options.limits.facet_budget = budget;
  options.geometry.delta = delta;
  if (!transcripts.empty()) options.transcript_dir = transcripts;
  chromatic::GameService service(options);

  httplib::Server server;
  server.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };
  server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    if (!req.params.empty()) {
      char sep = '?';
      for (const auto& [k, v] : req.params) {
        target += sep + k + "=" + v;
        sep = '&';
      }
    }
    const chromatic::ServiceResponse out = service.handle(req.method, target, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get(R"(/.*)", dispatch);
  server.Post(R"(/.*)", dispatch);
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  if (port == 0) {
    port = server.bind_to_any_port(host);
    if (port < 0) {
      std::fprintf(stderr, "cannot bind %s\n", host.c_str());
      return 1;
    }
    std::printf("listening on %s:%d\n", host.c_str(), port);
    std::fflush(stdout);
    return server.listen_after_bind() ? 0 : 1;
  }
  if (!server.bind_to_port(host, port)) {
    std::fprintf(stderr, "cannot bind %s:%d\n", host.c_str(), port);
    return 1;
  }
  std::printf("listening on %s:%d\n", host.c_str(), port);
  std::fflush(stdout);
  return server.listen_after_bind() ? 0 : 1;
}
