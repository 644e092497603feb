const TOKEN_KEY = "regtrack-token";
/** Bearer token + profile + active filters for the signed-in officer. */
export class SessionState {
    constructor(storage) {
        this.storage = storage;
        this.profile = null;
        this.filters = {};
    }
    get token() {
        return this.storage.getItem(TOKEN_KEY);
    }
    signIn(token, profile) {
        this.storage.setItem(TOKEN_KEY, token);
        this.profile = profile;
    }
    signOut() {
        this.storage.removeItem(TOKEN_KEY);
        this.profile = null;
        this.filters = {};
    }
    get isAdmin() {
        return this.profile?.role === "Admin";
    }
    /** Regions an officer may filter by; admins filter freely. */
    regionChoices() {
        if (!this.profile || this.profile.role === "Admin")
            return null;
        return [...this.profile.region_scopes];
    }
    setFilter(key, value) {
        if (value === "") {
            delete this.filters[key];
        }
        else {
            this.filters[key] = value;
        }
    }
    clearFilters() {
        this.filters = {};
    }
}
/**
 * Monotonic sequence numbers per view so responses that arrive out of order
 * are dropped instead of clobbering newer data.
 */
export class RequestSequencer {
    constructor() {
        this.counters = new Map();
    }
    next(view) {
        const seq = (this.counters.get(view) ?? 0) + 1;
        this.counters.set(view, seq);
        return seq;
    }
    isCurrent(view, seq) {
        return this.counters.get(view) === seq;
    }
}
/** In-memory Storage stand-in for tests and token-less embedding. */
export class MemoryStorage {
    constructor() {
        this.items = new Map();
    }
    getItem(key) {
        return this.items.has(key) ? this.items.get(key) : null;
    }
    setItem(key, value) {
        this.items.set(key, value);
    }
    removeItem(key) {
        this.items.delete(key);
    }
}
