#pragma once

#include <memory>
#include <string>
#include <thread>

#include "memento/archive.hpp"

namespace httplib {
class Server;
}

namespace memento {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 0;  // 0 = pick an ephemeral port
    std::string base_url;  // derived from host:port when empty
    std::string default_media = "application/n-triples";
    // When set, redirect-to-original points at the subject URI verbatim
    // instead of the local /resource/<name> emulation.
    bool external_original = false;
};

/// Wire layer over a read-only archive: /resource, /timegate, /memento,
/// /timemap and /timebundle routes. Handlers are stateless; requests may
/// be served concurrently.
class Service {
public:
    Service(Archive archive, ServiceConfig config);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    // Binds immediately; serves on a background thread until stop().
    void start();
    // Blocking variant for the CLI.
    void run();
    void stop();

    int port() const { return port_; }
    const std::string& base_url() const { return base_url_; }
    const Archive& archive() const { return *archive_; }

private:
    void setup_routes();

    std::shared_ptr<Archive> archive_;
    ServiceConfig config_;
    std::string base_url_;
    int port_ = 0;
    std::unique_ptr<httplib::Server> server_;
    std::unique_ptr<std::thread> thread_;
};

}  // namespace memento
