/** Tiny element builder so views stay readable without a framework. */
export function el(tag, attrs = {}, ...children) {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (typeof value === "function") {
            node.addEventListener(key.replace(/^on/, ""), value);
        }
        else if (typeof value === "boolean") {
            if (value)
                node.setAttribute(key, "");
            else
                node.removeAttribute(key);
            if (key === "disabled")
                node.disabled = value;
        }
        else {
            node.setAttribute(key, value);
        }
    }
    for (const child of children) {
        if (child === null)
            continue;
        node.append(child);
    }
    return node;
}
export function clear(node) {
    node.replaceChildren();
    return node;
}
export function option(value, label = value) {
    return el("option", { value }, label);
}
