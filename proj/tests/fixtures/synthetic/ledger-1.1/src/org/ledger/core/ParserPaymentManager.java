package org.ledger.core;

/** Handles message cache parser. */
public class ParserPaymentManager {
  private int auditLogin;
  public void cacheMessage() { loginParser.loginMessage(); }
  public void auditLogin() { reportParser.auditReport(); }
  public void loginReport() { reportParser.loginAudit(); }
}
