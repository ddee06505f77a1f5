#!/usr/bin/env python3
"""Serves a masked-language model behind the fill-mask HTTP protocol.

POST /fill-mask with {"model": str, "text": str, "targets": [str, ...]}.
The text must contain the model's mask token exactly once, at a position
the tokenizer maps to a single mask slot; otherwise the response is 422
{"error": "mask_tokenization"}.

The response maps each target to the sum of the model's softmax
probabilities over that target's vocabulary variants (the bare token and
its leading-space form), and reports which variants were found:
{"model": str, "probabilities": {t: p}, "resolved_variants": {t: [..]}}.

Usage: serve_model.py [--model roberta-base] [--host 127.0.0.1] [--port 8501]
"""

import argparse
import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import torch
from transformers import AutoModelForMaskedLM, AutoTokenizer


def build_handler(model_name):
    tokenizer = AutoTokenizer.from_pretrained(model_name)
    model = AutoModelForMaskedLM.from_pretrained(model_name)
    model.eval()

    def fill(text, targets):
        encoding = tokenizer(text, return_tensors="pt")
        mask_positions = (
            encoding["input_ids"][0] == tokenizer.mask_token_id
        ).nonzero(as_tuple=True)[0]
        if len(mask_positions) != 1:
            return None
        with torch.no_grad():
            logits = model(**encoding).logits[0, mask_positions[0]]
        probs = torch.softmax(logits, dim=-1)

        probabilities = {}
        resolved = {}
        for target in targets:
            variants = []
            total = 0.0
            for surface in (target, " " + target):
                tokens = tokenizer.tokenize(surface)
                if len(tokens) != 1:
                    continue
                token_id = tokenizer.convert_tokens_to_ids(tokens[0])
                if token_id == tokenizer.unk_token_id:
                    continue
                variants.append(tokens[0])
                total += probs[token_id].item()
            probabilities[target] = total
            resolved[target] = variants
        return probabilities, resolved

    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            if self.path != "/fill-mask":
                self.reply(404, {"error": "not_found"})
                return
            try:
                length = int(self.headers.get("Content-Length", "0"))
                request = json.loads(self.rfile.read(length))
                text = request["text"]
                targets = request["targets"]
            except (KeyError, ValueError):
                self.reply(400, {"error": "bad_request"})
                return
            result = fill(text, targets)
            if result is None:
                self.reply(422, {"error": "mask_tokenization"})
                return
            probabilities, resolved = result
            self.reply(200, {
                "model": model_name,
                "probabilities": probabilities,
                "resolved_variants": resolved,
            })

        def reply(self, status, payload):
            body = json.dumps(payload).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def log_message(self, fmt, *args):
            pass

    return Handler


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--model", default="roberta-base")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8501)
    args = parser.parse_args()

    server = ThreadingHTTPServer((args.host, args.port), build_handler(args.model))
    print("serving %s on %s:%d" % (args.model, args.host, args.port), flush=True)
    server.serve_forever()


if __name__ == "__main__":
    main()
