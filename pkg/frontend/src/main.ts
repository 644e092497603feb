import { ApiClient, ApiError } from "./api.js";
import { clear, el } from "./dom.js";
import { SessionState } from "./state.js";
import { adminView } from "./views/admin.js";
import { reportsView } from "./views/reports.js";
import { triageView } from "./views/triage.js";

type ViewName = "triage" | "reports" | "admin";

const state = new SessionState(window.localStorage);
let api: ApiClient | null = null;
let active: ViewName = "triage";

const app = document.getElementById("app")!;
const errorBanner = el("div", { class: "error-banner hidden" });

function showError(error: unknown): void {
  if (error instanceof ApiError && error.status === 401) {
    // token expired or revoked: never keep content on screen
    state.signOut();
    api = null;
    render();
    return;
  }
  errorBanner.textContent =
    error instanceof ApiError ? `${error.error}: ${error.detail}` : String(error);
  errorBanner.classList.remove("hidden");
  window.setTimeout(() => errorBanner.classList.add("hidden"), 6000);
}

function loginView(): HTMLElement {
  const token = el("input", { type: "password", placeholder: "access token" });
  const message = el("p", { class: "problems" });
  const submit = el("button", {}, "Sign in");
  submit.addEventListener("click", async () => {
    message.textContent = "";
    const candidate = new ApiClient(token.value);
    try {
      const profile = await candidate.session();
      state.signIn(token.value, profile);
      api = candidate;
      active = "triage";
      render();
    } catch (error) {
      message.textContent =
        error instanceof ApiError ? error.detail : "could not reach the service";
    }
  });
  return el(
    "section",
    { class: "login" },
    el("h1", {}, "regtrack"),
    el("p", {}, "Sign in with your access token to triage announcements."),
    el("label", {}, "Token ", token),
    submit,
    message,
  );
}

function navBar(): HTMLElement {
  const tabs: [ViewName, string][] = [
    ["triage", "Triage"],
    ["reports", "Reports"],
  ];
  if (state.isAdmin) tabs.push(["admin", "Admin"]);
  const nav = el("nav", { class: "nav" });
  for (const [name, label] of tabs) {
    nav.append(
      el(
        "button",
        {
          class: name === active ? "tab active" : "tab",
          onclick: () => {
            active = name;
            render();
          },
        },
        label,
      ),
    );
  }
  nav.append(
    el("span", { class: "who" }, `${state.profile?.display_name} (${state.profile?.role})`),
    el(
      "button",
      {
        class: "signout",
        onclick: () => {
          state.signOut();
          api = null;
          render();
        },
      },
      "Sign out",
    ),
  );
  return nav;
}

function render(): void {
  clear(app as HTMLElement);
  app.append(errorBanner);
  if (!api || !state.profile) {
    app.append(loginView());
    return;
  }
  app.append(navBar());
  if (active === "triage") app.append(triageView(api, state, showError));
  else if (active === "reports") app.append(reportsView(api, showError));
  else if (state.isAdmin) app.append(adminView(api, showError));
}

async function boot(): Promise<void> {
  const token = state.token;
  if (token) {
    const candidate = new ApiClient(token);
    try {
      const profile = await candidate.session();
      state.signIn(token, profile);
      api = candidate;
    } catch {
      state.signOut();
    }
  }
  render();
}

void boot();
