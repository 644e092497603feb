import { ApiClient } from "../api.js";
import { el, option } from "../dom.js";
import type { Role } from "../types.js";

export function adminView(api: ApiClient, onError: (error: unknown) => void): HTMLElement {
  const root = el("section", { class: "admin" });
  const status = el("p", { class: "status" });

  const userId = el("input", { placeholder: "user id" });
  const displayName = el("input", { placeholder: "display name" });
  const rolePicker = el("select", {});
  rolePicker.append(option("Officer"), option("Admin"));
  const scopes = el("input", { placeholder: "region scopes, comma separated (e.g. US-CA,US-NY)" });
  const token = el("input", { placeholder: "token (shared with the user once)" });

  const submit = el("button", {}, "Create or update user");
  submit.addEventListener("click", async () => {
    status.textContent = "";
    try {
      await api.addUser({
        user_id: userId.value.trim(),
        display_name: displayName.value.trim(),
        role: rolePicker.value as Role,
        region_scopes: scopes.value
          .split(",")
          .map((s) => s.trim())
          .filter((s) => s !== ""),
        token: token.value,
      });
      status.textContent = `saved user ${userId.value.trim()}`;
      token.value = "";
    } catch (error) {
      onError(error);
    }
  });

  const pipeline = el("button", {}, "Run ingest pipeline");
  pipeline.addEventListener("click", async () => {
    status.textContent = "pipeline running...";
    try {
      const summary = (await api.runPipeline()) as Record<string, unknown>;
      status.textContent = `pipeline done: ${JSON.stringify(summary)}`;
    } catch (error) {
      status.textContent = "";
      onError(error);
    }
  });

  root.append(
    el("h2", {}, "User management"),
    el("div", { class: "admin-form" },
      el("label", {}, "User id ", userId),
      el("label", {}, "Display name ", displayName),
      el("label", {}, "Role ", rolePicker),
      el("label", {}, "Region scopes ", scopes),
      el("label", {}, "Token ", token),
      submit,
    ),
    el("h2", {}, "Operations"),
    pipeline,
    status,
  );
  return root;
}
