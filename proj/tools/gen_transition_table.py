#!/usr/bin/env python3
"""Generate data/transition_table.csv.

Each row is (contract, state, role, action, result_state_or_error). The state
column is the local state the action reads; the result column is either the
local state after a successful call, an error name, or `view:<kind>` for
read-only calls.

Local state encodings:

  Sales
    setSalesContract(v)       <Init>
    addOrder/confirmOrder/
    cancelOrder/receiveOrder  <Init>/<OrderStatus>
    createInvoice(v)          <Init>/<OrderStatus>/<InvoiceStatus>
    confirmInvoice            <Init>/<InvoiceStatus>
    orderExists               <OrderStatus>

  Financial
    setFinancialAgreementParties(v)  <Status>
    confirmAgreement                 <Status>/<confirmations>/<callerConfirmed Y|N>

  LetterOfCredit
    initializeContract(v)   <Status>
    addDocument             <Status>
    validateDocument        <Status>/<DocStatus>/<wouldComplete Y|N>
    getNumberOfDocuments    <Status>
    getDocumentID           <DocStatus>
    IsDocumentValid         <DocStatus>

Run from the repository root:  python3 tools/gen_transition_table.py
"""

import csv
import sys
from pathlib import Path

INIT = ["Uninitialized", "Initialized"]
ORDER = ["None", "Created", "Confirmed", "Received", "Cancelled"]
INVOICE = ["None", "Issued", "Confirmed"]
SALES_ROLES = ["buyer", "seller", "outsider"]

FIN_STATUS = ["Unset", "Proposed", "Confirmed"]
FIN_ROLES = ["applicant", "financier", "beneficiary", "outsider"]

LC_STATUS = ["Unset", "Issued", "DocumentsComplete"]
DOC = ["None", "Pending", "Valid"]
LC_ROLES = ["applicant", "beneficiary", "bank", "outsider"]


def sales_rows():
    for init in INIT:
        for role in SALES_ROLES:
            for variant in ["distinct", "same"]:
                if init == "Initialized":
                    out = "AlreadyInitialized"
                elif variant == "same":
                    out = "SameParty"
                else:
                    out = "Initialized"
                yield ("Sales", init, role, f"setSalesContract({variant})", out)

    def order_action(action, init, order, role):
        if init == "Uninitialized":
            return "NotInitialized"
        if action == "addOrder":
            if role != "buyer":
                return "NotBuyer"
            if order != "None":
                return "DuplicateOrder"
            return f"{init}/Created"
        need_role = {"confirmOrder": "seller", "cancelOrder": "buyer", "receiveOrder": "buyer"}[action]
        if role != need_role:
            return "NotSeller" if need_role == "seller" else "NotBuyer"
        if order == "None":
            return "NoSuchOrder"
        allowed = {
            "confirmOrder": ({"Created"}, "Confirmed"),
            "cancelOrder": ({"Created", "Confirmed"}, "Cancelled"),
            "receiveOrder": ({"Confirmed"}, "Received"),
        }[action]
        if order not in allowed[0]:
            return "BadState"
        return f"{init}/{allowed[1]}"

    for action in ["addOrder", "confirmOrder", "cancelOrder", "receiveOrder"]:
        for init in INIT:
            for order in ORDER:
                for role in SALES_ROLES:
                    yield ("Sales", f"{init}/{order}", role, action,
                           order_action(action, init, order, role))

    for init in INIT:
        for order in ORDER:
            yield ("Sales", order, "any", "orderExists",
                   "view:false" if order == "None" else "view:true")

    for init in INIT:
        for order in ORDER:
            for inv in INVOICE:
                for role in SALES_ROLES:
                    for variant in ["positive", "zero"]:
                        if init == "Uninitialized":
                            out = "NotInitialized"
                        elif role != "seller":
                            out = "NotSeller"
                        elif variant == "zero":
                            out = "ZeroAmount"
                        elif inv != "None":
                            out = "DuplicateInvoice"
                        elif order == "None":
                            out = "NoSuchOrder"
                        elif order not in ("Confirmed", "Received"):
                            out = "BadState"
                        else:
                            out = f"{init}/{order}/Issued"
                        yield ("Sales", f"{init}/{order}/{inv}", role,
                               f"createInvoice({variant})", out)

    for init in INIT:
        for inv in INVOICE:
            for role in SALES_ROLES:
                if init == "Uninitialized":
                    out = "NotInitialized"
                elif role != "buyer":
                    out = "NotBuyer"
                elif inv == "None":
                    out = "NoSuchInvoice"
                elif inv != "Issued":
                    out = "BadState"
                else:
                    out = f"{init}/Confirmed"
                yield ("Sales", f"{init}/{inv}", role, "confirmInvoice", out)
    # orderExists rows above are emitted once per Init value; deduplicated below.


def financial_states():
    yield ("Unset", 0, "N")
    for k in range(0, 3):
        yield ("Proposed", k, "N")
    for k in range(1, 3):
        yield ("Proposed", k, "Y")
    yield ("Confirmed", 3, "Y")
    yield ("Confirmed", 3, "N")


def financial_rows():
    for status in FIN_STATUS:
        for role in FIN_ROLES:
            for variant in ["distinct", "duplicate"]:
                if status != "Unset":
                    out = "AlreadyInitialized"
                elif variant == "duplicate":
                    out = "DuplicateParty"
                else:
                    out = "Proposed"
                yield ("Financial", status, role,
                       f"setFinancialAgreementParties({variant})", out)
    for status, k, me in financial_states():
        for role in FIN_ROLES:
            if status == "Unset":
                out = "NotInitialized"
            elif role == "outsider":
                out = "NotParty"
            elif me == "Y" or status == "Confirmed":
                out = "AlreadyConfirmed"
            elif k + 1 == 3:
                out = "Confirmed/3/Y"
            else:
                out = f"Proposed/{k + 1}/Y"
            yield ("Financial", f"{status}/{k}/{me}", role, "confirmAgreement", out)


def lc_rows():
    for status in LC_STATUS:
        for role in LC_ROLES:
            for variant in ["valid", "duplicateParty", "zeroAmount", "noDocs"]:
                if status != "Unset":
                    out = "AlreadyInitialized"
                elif variant == "duplicateParty":
                    out = "DuplicateParty"
                elif variant == "zeroAmount":
                    out = "ZeroAmount"
                elif variant == "noDocs":
                    out = "NoRequiredDocs"
                else:
                    out = "Issued"
                yield ("LetterOfCredit", status, role, f"initializeContract({variant})", out)
    for status in LC_STATUS:
        for role in LC_ROLES:
            if status == "Unset":
                out = "NotInitialized"
            elif role != "beneficiary":
                out = "NotBeneficiary"
            elif status == "DocumentsComplete":
                out = "BadState"
            else:
                out = status
            yield ("LetterOfCredit", status, role, "addDocument", out)
    for status in LC_STATUS:
        for doc in DOC:
            for completes in ["Y", "N"]:
                for role in LC_ROLES:
                    if status == "Unset":
                        out = "NotInitialized"
                    elif role != "bank":
                        out = "NotIssuingBank"
                    elif doc == "None":
                        out = "NoSuchDocument"
                    elif doc == "Valid":
                        out = "AlreadyValid"
                    elif status == "DocumentsComplete" or completes == "Y":
                        out = "DocumentsComplete/Valid"
                    else:
                        out = "Issued/Valid"
                    yield ("LetterOfCredit", f"{status}/{doc}/{completes}", role,
                           "validateDocument", out)
    for status in LC_STATUS:
        yield ("LetterOfCredit", status, "any", "getNumberOfDocuments", "view:count")
    for doc in DOC:
        yield ("LetterOfCredit", doc, "any", "getDocumentID",
               "IndexOutOfRange" if doc == "None" else "view:hash")
        yield ("LetterOfCredit", doc, "any", "IsDocumentValid",
               {"None": "NoSuchDocument", "Pending": "view:false", "Valid": "view:true"}[doc])


def main():
    root = Path(__file__).resolve().parent.parent
    out_path = Path(sys.argv[1]) if len(sys.argv) > 1 else root / "data" / "transition_table.csv"
    seen = set()
    rows = []
    for row in [*sales_rows(), *financial_rows(), *lc_rows()]:
        if row not in seen:
            seen.add(row)
            rows.append(row)
    with out_path.open("w", newline="") as fh:
        fh.write("# transition table v1: generated by tools/gen_transition_table.py\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["contract", "state", "role", "action", "result_state_or_error"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {out_path}")


if __name__ == "__main__":
    main()
