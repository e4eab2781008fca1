#include "memento/service.hpp"

#include <sstream>

#include <httplib.h>

#include "memento/errors.hpp"
#include "memento/link_header.hpp"
#include "memento/ntriples.hpp"
#include "memento/timegate.hpp"
#include "memento/timemap.hpp"
#include "memento/uri.hpp"
#include "memento/xml.hpp"

namespace memento {
namespace {

constexpr const char* kVary = "negotiate, accept-datetime";
constexpr const char* kNTriples = "application/n-triples";
constexpr const char* kHtml = "text/html";

// Ordered media preferences; q-values are ignored, header order decides.
std::vector<std::string> accept_list(const httplib::Request& req) {
    std::vector<std::string> out;
    std::string accept = req.get_header_value("Accept");
    std::size_t i = 0;
    while (i < accept.size()) {
        auto comma = accept.find(',', i);
        std::string item = accept.substr(i, comma == std::string::npos ? comma : comma - i);
        auto semi = item.find(';');
        if (semi != std::string::npos) item = item.substr(0, semi);
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        i = comma + 1;
    }
    return out;
}

// Returns the concrete representation type, or empty for 406.
std::string pick_media(const httplib::Request& req, const std::string& default_media) {
    auto prefs = accept_list(req);
    if (prefs.empty()) return default_media;
    for (const auto& p : prefs) {
        if (p == kNTriples || p == kHtml) return p;
        if (p == "*/*" || p == "application/*" || p == "text/plain") return default_media;
        if (p == "text/*") return kHtml;
    }
    return "";
}

std::string render_html(const std::string& subject, const std::string& ntriples) {
    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html><head><title>" << xml_escape(subject)
        << "</title></head><body>\n<h1>" << xml_escape(subject)
        << "</h1>\n<table border=\"1\">\n<tr><th>property</th><th>value</th></tr>\n";
    for (const auto& t : parse_ntriples_string(ntriples))
        out << "<tr><td>" << xml_escape(t.predicate) << "</td><td>" << xml_escape(t.object.lexical)
            << "</td></tr>\n";
    out << "</table>\n</body></html>\n";
    return out.str();
}

}  // namespace

Service::Service(Archive archive, ServiceConfig config)
    : archive_(std::make_shared<Archive>(std::move(archive))),
      config_(std::move(config)),
      server_(std::make_unique<httplib::Server>()) {
    setup_routes();
}

Service::~Service() { stop(); }

void Service::start() {
    if (config_.port == 0)
        port_ = server_->bind_to_any_port(config_.host);
    else {
        if (!server_->bind_to_port(config_.host, config_.port))
            throw Error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
        port_ = config_.port;
    }
    base_url_ = config_.base_url.empty()
                    ? "http://" + config_.host + ":" + std::to_string(port_)
                    : config_.base_url;
    archive_->set_base_url(base_url_);
    thread_ = std::make_unique<std::thread>([srv = server_.get()] { srv->listen_after_bind(); });
    server_->wait_until_ready();
}

void Service::run() {
    if (config_.port == 0)
        port_ = server_->bind_to_any_port(config_.host);
    else {
        if (!server_->bind_to_port(config_.host, config_.port))
            throw Error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
        port_ = config_.port;
    }
    base_url_ = config_.base_url.empty()
                    ? "http://" + config_.host + ":" + std::to_string(port_)
                    : config_.base_url;
    archive_->set_base_url(base_url_);
    server_->listen_after_bind();
}

void Service::stop() {
    if (server_) server_->stop();
    if (thread_ && thread_->joinable()) thread_->join();
    thread_.reset();
}

void Service::setup_routes() {
    auto archive = archive_;
    auto* self = this;

    // In emulation mode the original lives at our /resource/<name>; only with
    // external_original do rel="original" links name the subject verbatim.
    auto localize = [self](std::vector<LinkEntry> links) {
        if (!self->config_.external_original)
            for (auto& entry : links)
                for (const auto& rel : entry.rels)
                    if (rel == LinkRelation::original())
                        entry.target =
                            self->base_url() + "/resource/" + last_path_segment(entry.target);
        return links;
    };

    auto memento_links = [archive, localize](const std::string& subject,
                                             const MementoRecord& rec) {
        NegotiationDecision d;
        d.kind = NegotiationDecision::Kind::RedirectToMemento;
        d.subject = subject;
        d.record = rec;
        return format_link_header(localize(decision_links(*archive, d)));
    };

    server_->Get(R"(/resource/([^/]+))", [archive, self](const httplib::Request& req,
                                                         httplib::Response& res) {
        auto subject = archive->resolve_by_suffix(req.matches[1]);
        if (!subject || !archive->has_current(*subject)) {
            res.status = 404;
            res.set_content("no such resource\n", "text/plain");
            return;
        }
        std::string media = pick_media(req, self->config_.default_media);
        if (media.empty()) {
            res.status = 406;
            res.set_content("supported: application/n-triples, text/html\n", "text/plain");
            return;
        }
        std::vector<LinkEntry> links = {
            {self->base_url() + "/timegate/" + *subject, {LinkRelation::timegate()}, {}},
            {self->base_url() + "/timebundle/" + *subject, {LinkRelation::timebundle()}, {}}};
        res.set_header("Link", format_link_header(links));
        std::string body = *archive->current_representation(*subject);
        if (media == kHtml)
            res.set_content(render_html(*subject, body), kHtml);
        else
            res.set_content(body, kNTriples);
    });

    server_->Get(R"(/timegate/(.+))", [archive, self, localize](const httplib::Request& req,
                                                                httplib::Response& res) {
        res.set_header("Vary", kVary);
        NegotiationRequest nreq;
        nreq.subject = req.matches[1];
        nreq.accept_media = accept_list(req);
        if (req.has_header("Accept-Datetime")) {
            try {
                nreq.accept_datetime = parse_http_date(req.get_header_value("Accept-Datetime"));
            } catch (const MalformedDate& e) {
                res.status = 400;
                res.set_content(std::string(e.what()) + "\n", "text/plain");
                return;
            }
        }
        nreq.explicit_negotiate =
            req.has_header("Negotiate") && req.get_header_value("Negotiate").rfind("1.0", 0) == 0;

        NegotiationDecision decision;
        try {
            decision = negotiate(*archive, nreq);
        } catch (const UnknownSubject&) {
            res.status = 404;
            res.set_content("unknown subject\n", "text/plain");
            return;
        }

        switch (decision.kind) {
            case NegotiationDecision::Kind::RedirectToMemento:
                res.status = 302;
                res.set_header("Location", decision.record->memento_uri);
                res.set_header(
                    "Link", format_link_header(localize(decision_links(*archive, decision))));
                break;
            case NegotiationDecision::Kind::RedirectToOriginal:
                res.status = 302;
                res.set_header("Location",
                               self->config_.external_original
                                   ? decision.subject
                                   : self->base_url() + "/resource/" +
                                         last_path_segment(decision.subject));
                res.set_header("Link", format_link_header(decision_links(*archive, decision)));
                break;
            case NegotiationDecision::Kind::MultipleChoices: {
                res.status = 300;
                std::string body;
                std::vector<LinkEntry> links;
                for (const auto& rec : decision.candidates) {
                    body += rec.memento_uri + " " + format_http_date(rec.interval.start) + "\n";
                    LinkEntry e{rec.memento_uri, {LinkRelation::from_token("memento")}, {}};
                    e.params.emplace_back("datetime", format_http_date(rec.interval.start));
                    links.push_back(std::move(e));
                }
                if (!links.empty()) res.set_header("Link", format_link_header(links));
                res.set_content(body, "text/plain");
                break;
            }
            case NegotiationDecision::Kind::NotAcceptable:
                res.status = 406;
                res.set_content("Accept-Datetime outside known range: " +
                                    format_http_date(decision.known_range->start) + " .. " +
                                    format_http_date(*decision.known_range->end) + "\n",
                                "text/plain");
                break;
        }
    });

    server_->Get(R"(/memento/(\d{8})/(.+))", [archive, self, memento_links](
                                                 const httplib::Request& req,
                                                 httplib::Response& res) {
        std::string subject = req.matches[2];
        Timestamp date;
        try {
            date = parse_yyyymmdd(std::string(req.matches[1]));
        } catch (const MalformedDate&) {
            res.status = 404;
            return;
        }
        for (const auto& rec : archive->list_versions(subject)) {
            if (rec.interval.start != date) continue;
            std::string media = pick_media(req, self->config_.default_media);
            if (media.empty()) {
                res.status = 406;
                res.set_content("supported: application/n-triples, text/html\n", "text/plain");
                return;
            }
            res.set_header("Content-Datetime", format_http_date(rec.interval.start));
            res.set_header("Link", memento_links(subject, rec));
            std::string body = archive->representation(rec);
            if (media == kHtml)
                res.set_content(render_html(subject, body), kHtml);
            else
                res.set_content(body, kNTriples);
            return;
        }
        res.status = 404;
        res.set_content("no memento for that date\n", "text/plain");
    });

    server_->Get(R"(/timemap/([^/]+)/(.+))", [archive](const httplib::Request& req,
                                                       httplib::Response& res) {
        std::string fmt = req.matches[1];
        if (fmt != "rdf") {
            res.status = 406;
            res.set_content("unknown timemap format: " + fmt + "\n", "text/plain");
            return;
        }
        try {
            auto doc = build_timemap(*archive, req.matches[2]);
            res.set_content(serialize_rdfxml(doc), "application/rdf+xml");
        } catch (const UnknownSubject&) {
            res.status = 404;
            res.set_content("unknown subject\n", "text/plain");
        }
    });

    // TimeBundles are non-information resources; 303 to their description.
    server_->Get(R"(/timebundle/(.+))", [self](const httplib::Request& req,
                                               httplib::Response& res) {
        res.status = 303;
        res.set_header("Location",
                       self->base_url() + "/timemap/rdf/" + std::string(req.matches[1]));
    });
}

}  // namespace memento
