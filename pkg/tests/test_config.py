from regtrack.config import AppConfig, load_config


def test_defaults_without_file():
    config = load_config(None)
    assert config.server.port == 8000
    assert config.ingest.timeout_secs == 30.0
    assert config.model.l2_lambda == 1.0
    assert config.model.step1_threshold == 0.5
    assert config.model.rule_min_support == 3
    assert config.users == ()


def test_full_file(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text(
        """
[server]
bind = "0.0.0.0"
port = 9100

[ingest]
timeout_secs = 5.0
user_agent = "agent/1"
workers = 8
registry = "sources.jsonl"

[model]
l2_lambda = 0.5
max_epochs = 200
tol = 1e-4
step1_threshold = 0.4
rule_threshold = 0.6
rule_min_support = 2
nb_alpha = 0.5
test_fraction = 0.25

[[auth.users]]
user_id = "a"
display_name = "Admin"
role = "Admin"
region_scopes = []
token = "t1"

[[auth.users]]
user_id = "o"
role = "Officer"
region_scopes = ["US-CA", "US-NY"]
token = "t2"
""",
        encoding="utf-8",
    )
    config = load_config(path)
    assert config.server.bind == "0.0.0.0"
    assert config.server.port == 9100
    assert config.ingest.workers == 8
    assert config.model.test_fraction == 0.25
    assert len(config.users) == 2
    assert config.users[1].region_scopes == ("US-CA", "US-NY")
    assert config.users[1].display_name == "o"  # defaults to the user id
    assert config.resolve("sources.jsonl") == tmp_path / "sources.jsonl"
    assert config.resolve(None) is None


def test_relative_resolution_uses_base_dir(tmp_path):
    config = AppConfig(base_dir=tmp_path)
    assert config.resolve("x/y.jsonl") == tmp_path / "x" / "y.jsonl"
    absolute = tmp_path / "abs.jsonl"
    assert config.resolve(str(absolute)) == absolute
