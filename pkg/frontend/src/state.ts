import type { SessionProfile, TriageFilters } from "./types.js";

const TOKEN_KEY = "regtrack-token";

/** Bearer token + profile + active filters for the signed-in officer. */
export class SessionState {
  profile: SessionProfile | null = null;
  filters: TriageFilters = {};

  constructor(private storage: Pick<Storage, "getItem" | "setItem" | "removeItem">) {}

  get token(): string | null {
    return this.storage.getItem(TOKEN_KEY);
  }

  signIn(token: string, profile: SessionProfile): void {
    this.storage.setItem(TOKEN_KEY, token);
    this.profile = profile;
  }

  signOut(): void {
    this.storage.removeItem(TOKEN_KEY);
    this.profile = null;
    this.filters = {};
  }

  get isAdmin(): boolean {
    return this.profile?.role === "Admin";
  }

  /** Regions an officer may filter by; admins filter freely. */
  regionChoices(): string[] | null {
    if (!this.profile || this.profile.role === "Admin") return null;
    return [...this.profile.region_scopes];
  }

  setFilter(key: keyof TriageFilters, value: string): void {
    if (value === "") {
      delete this.filters[key];
    } else {
      this.filters[key] = value;
    }
  }

  clearFilters(): void {
    this.filters = {};
  }
}

/**
 * Monotonic sequence numbers per view so responses that arrive out of order
 * are dropped instead of clobbering newer data.
 */
export class RequestSequencer {
  private counters = new Map<string, number>();

  next(view: string): number {
    const seq = (this.counters.get(view) ?? 0) + 1;
    this.counters.set(view, seq);
    return seq;
  }

  isCurrent(view: string, seq: number): boolean {
    return this.counters.get(view) === seq;
  }
}

/** In-memory Storage stand-in for tests and token-less embedding. */
export class MemoryStorage {
  private items = new Map<string, string>();

  getItem(key: string): string | null {
    return this.items.has(key) ? this.items.get(key)! : null;
  }

  setItem(key: string, value: string): void {
    this.items.set(key, value);
  }

  removeItem(key: string): void {
    this.items.delete(key);
  }
}
